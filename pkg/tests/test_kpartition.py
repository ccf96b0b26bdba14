from __future__ import annotations

import pytest

from treepack import (
    INFINITE_LEVEL,
    KPartition,
    MultiGraph,
    Partition,
    build_sequence,
    edge_levels,
    precedes,
)

from graphs import (
    random_coloring,
    random_multigraph,
    two_step_sequence_instance,
    two_tree_cycle_with_chords,
)


# An independent, straight-from-definition evaluator of the sequence,
# using per-class breadth-first search instead of union-find.

def _connected_within(g: MultiGraph, edge_ids: list[int], members: tuple[int, ...]) -> bool:
    inside = set(members)
    adjacency: dict[int, list[int]] = {v: [] for v in inside}
    for e in edge_ids:
        u, v = g.edges[e]
        if u in inside and v in inside:
            adjacency[u].append(v)
            adjacency[v].append(u)
    queue = [members[0]]
    seen = {members[0]}
    while queue:
        x = queue.pop()
        for w in adjacency[x]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == inside


def _split_class(g: MultiGraph, edge_ids: list[int], members: tuple[int, ...]) -> list[list[int]]:
    inside = set(members)
    adjacency: dict[int, list[int]] = {v: [] for v in inside}
    for e in edge_ids:
        u, v = g.edges[e]
        if u in inside and v in inside:
            adjacency[u].append(v)
            adjacency[v].append(u)
    parts = []
    left = set(inside)
    while left:
        start = min(left)
        queue = [start]
        seen = {start}
        while queue:
            x = queue.pop()
            for w in adjacency[x]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        parts.append(sorted(seen))
        left -= seen
    return parts


def naive_sequence(g: MultiGraph, t: KPartition) -> tuple[list[Partition], list[int]]:
    """Definition re-read: least disconnected color, split every class."""
    partitions = [Partition.trivial(g.n)]
    splitters: list[int] = []
    while True:
        current = partitions[-1]
        chosen = None
        for color in range(1, t.k + 1):
            ids = [e for e in range(g.m) if t.color_of[e] == color]
            if any(not _connected_within(g, ids, cls) for cls in current.classes):
                chosen = color
                break
        if chosen is None:
            return partitions, splitters
        ids = [e for e in range(g.m) if t.color_of[e] == chosen]
        classes: list[list[int]] = []
        for cls in current.classes:
            classes.extend(_split_class(g, ids, cls))
        partitions.append(Partition.from_classes(classes, g.n))
        splitters.append(chosen)


def naive_level(g: MultiGraph, partitions: list[Partition], e: int):
    """Largest index whose partition keeps the endpoints together."""
    u, v = g.edges[e]
    if partitions[-1].class_of[u] == partitions[-1].class_of[v]:
        return INFINITE_LEVEL
    best = 0
    for i, p in enumerate(partitions):
        if p.class_of[u] == p.class_of[v]:
            best = i
    return best


# KPartition basics -----------------------------------------------------------

def test_kpartition_validates_colors():
    with pytest.raises(ValueError):
        KPartition(2, (1, 3))
    with pytest.raises(ValueError):
        KPartition(0, ())
    with pytest.raises(ValueError):
        KPartition.from_edge_sets(2, [[0], [0]], 1)
    with pytest.raises(ValueError):
        KPartition.from_edge_sets(2, [[0], []], 2)


def test_edges_of_color_and_recolor():
    t = KPartition(3, (1, 2, 1, 3))
    assert t.edges_of_color(1) == (0, 2)
    u = t.recolor({0: 3})
    assert u.edges_of_color(3) == (0, 3)
    assert t.edges_of_color(3) == (3,)  # original untouched


# build_sequence ---------------------------------------------------------------

def test_sequence_terminates_immediately_when_all_colors_connected():
    g, t = two_tree_cycle_with_chords()
    seq = build_sequence(g, t)
    assert seq.steps == ()
    assert seq.terminal == Partition.trivial(g.n)
    assert seq.splitter_at(0) == t.k + 1  # the k+1 sentinel right away


def test_sequence_single_color_disconnected_graph():
    g = MultiGraph(4, ((0, 1), (2, 3)))
    t = KPartition(1, (1, 1))
    seq = build_sequence(g, t)
    assert len(seq.steps) == 1
    assert seq.steps[0].partition == Partition.trivial(4)
    assert seq.steps[0].splitter == 1
    assert seq.terminal == Partition.from_classes([[0, 1], [2, 3]])


def test_two_step_sequence_shape():
    g, t = two_step_sequence_instance()
    seq = build_sequence(g, t)
    assert [step.splitter for step in seq.steps] == [2, 1]
    assert seq.steps[0].partition == Partition.trivial(8)
    assert seq.steps[1].partition == Partition.from_classes(
        [[0, 1, 2, 3], [4, 5, 6, 7]]
    )
    assert seq.terminal == Partition.from_classes([[0, 1, 2, 3], [4], [5], [6], [7]])
    # agrees with the straight-from-definition evaluator
    partitions, splitters = naive_sequence(g, t)
    assert splitters == [2, 1]
    assert partitions[-1] == seq.terminal


def test_sequence_matches_naive_evaluator_on_random_colorings():
    for seed in range(80):
        g = random_multigraph(seed)
        if g.m == 0:
            continue
        k = 1 + seed % 3
        t = random_coloring(seed + 500, g, k)
        seq = build_sequence(g, t)
        partitions, splitters = naive_sequence(g, t)
        assert [s.partition for s in seq.steps] == partitions[:-1]
        assert [s.splitter for s in seq.steps] == splitters
        assert seq.terminal == partitions[-1]


def test_sequence_strictly_descends_and_splitters_are_minimal():
    for seed in range(60):
        g = random_multigraph(seed)
        if g.m == 0:
            continue
        t = random_coloring(seed + 900, g, 1 + seed % 3)
        seq = build_sequence(g, t)
        assert len(seq.steps) <= max(0, g.n - 1)
        chain = [s.partition for s in seq.steps] + [seq.terminal]
        for earlier, later in zip(chain, chain[1:]):
            assert later.strictly_refines(earlier)
        for step in seq.steps:
            for color in range(1, step.splitter):
                ids = [e for e in range(g.m) if t.color_of[e] == color]
                assert all(
                    _connected_within(g, ids, cls) for cls in step.partition.classes
                )


# edge_levels -------------------------------------------------------------------

def test_loop_has_infinite_level():
    g = MultiGraph(2, ((0, 1), (1, 1)))
    t = KPartition(1, (1, 1))
    seq = build_sequence(g, t)
    levels = edge_levels(g, t, seq)
    assert levels[1] == INFINITE_LEVEL


def test_edge_separated_at_first_split_has_level_zero():
    g = MultiGraph(4, ((0, 1), (2, 3), (1, 2)))
    t = KPartition.from_edge_sets(2, [[0, 1], [2]], 3)
    seq = build_sequence(g, t)
    levels = edge_levels(g, t, seq)
    assert levels[2] == 0  # (1,2) crosses the components of color 1


def test_levels_match_definitional_scan():
    for seed in range(60):
        g = random_multigraph(seed)
        if g.m == 0:
            continue
        t = random_coloring(seed + 123, g, 1 + seed % 3)
        seq = build_sequence(g, t)
        levels = edge_levels(g, t, seq)
        partitions = [s.partition for s in seq.steps] + [seq.terminal]
        for e in range(g.m):
            assert levels[e] == naive_level(g, partitions, e)


def test_level_terminal_consistency():
    for seed in range(40):
        g = random_multigraph(seed)
        if g.m == 0:
            continue
        t = random_coloring(seed + 321, g, 1 + seed % 3)
        seq = build_sequence(g, t)
        levels = edge_levels(g, t, seq)
        for e, (u, v) in enumerate(g.edges):
            together = seq.terminal.class_of[u] == seq.terminal.class_of[v]
            assert (levels[e] == INFINITE_LEVEL) == together


# precedes ----------------------------------------------------------------------

def test_precedes_is_irreflexive():
    g = random_multigraph(3)
    t = random_coloring(77, g, 2)
    assert not precedes(t, t, g)


def test_precedes_on_strictly_finer_first_partition():
    g = MultiGraph(4, ((0, 1), (2, 3), (0, 1), (2, 3)))
    finer = KPartition.from_edge_sets(2, [[0], [1, 2, 3]], 4)
    coarser = KPartition.from_edge_sets(2, [[0, 1], [2, 3]], 4)
    assert precedes(finer, coarser, g)
    assert not precedes(coarser, finer, g)


def test_precedes_checks_compatibility():
    g = MultiGraph(2, ((0, 1),))
    with pytest.raises(ValueError):
        precedes(KPartition(1, (1,)), KPartition(2, (1,)), g)
    with pytest.raises(ValueError):
        precedes(KPartition(1, (1,)), KPartition(1, (1, 1)), g)


def test_precedes_is_antisymmetric_on_random_pairs():
    for seed in range(50):
        g = random_multigraph(seed)
        if g.m == 0:
            continue
        k = 1 + seed % 3
        a = random_coloring(seed + 1, g, k)
        b = random_coloring(seed + 2, g, k)
        assert not (precedes(a, b, g) and precedes(b, a, g))
