"""Edge colorings into k slots, their partition sequences and edge levels.

A ``KPartition`` assigns every edge of a graph to one of k color slots;
slot k is the unconstrained remainder while slots 1..k-1 hold spanning
trees during packing. The associated *partition sequence* starts from the
one-class vertex partition and repeatedly splits every class into the
components of the least color that is disconnected inside some class,
until every color is connected on every class. The *level* of an edge is
the last index at which its endpoints still share a class. The sequence,
compared lexicographically by (partition, splitter), induces the strict
improvement order used to prove that edge exchanges terminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .multigraph import EdgeId, MultiGraph, restrict_components
from .partition import Partition

# Level of an edge whose endpoints are never separated (loops included).
INFINITE_LEVEL: float = math.inf

Level = int | float
LevelMap = tuple[Level, ...]


@dataclass(frozen=True)
class KPartition:
    """A total assignment of edge ids to colors ``1..k``."""

    k: int
    color_of: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("need at least one color")
        object.__setattr__(self, "color_of", tuple(self.color_of))
        for eid, color in enumerate(self.color_of):
            if not 1 <= color <= self.k:
                raise ValueError(f"edge {eid} has color {color}, not in 1..{self.k}")

    @classmethod
    def from_edge_sets(
        cls, k: int, edge_sets: Iterable[Iterable[EdgeId]], m: int
    ) -> "KPartition":
        """Build a coloring from k edge-id sets that partition ``range(m)``."""
        color_of = [0] * m
        for color, ids in enumerate(edge_sets, start=1):
            for e in ids:
                if not 0 <= e < m:
                    raise ValueError(f"edge id {e} out of range")
                if color_of[e]:
                    raise ValueError(f"edge {e} assigned to two colors")
                color_of[e] = color
        if any(c == 0 for c in color_of):
            missing = color_of.index(0)
            raise ValueError(f"edge {missing} has no color")
        return cls(k, tuple(color_of))

    @property
    def m(self) -> int:
        return len(self.color_of)

    def edges_of_color(self, color: int) -> tuple[EdgeId, ...]:
        """All edge ids of one color, in increasing id order."""
        return tuple(e for e, c in enumerate(self.color_of) if c == color)

    def recolor(self, changes: Mapping[EdgeId, int]) -> "KPartition":
        colors = list(self.color_of)
        for e, color in changes.items():
            colors[e] = color
        return KPartition(self.k, tuple(colors))


class SequenceStep(NamedTuple):
    partition: Partition
    splitter: int


@dataclass(frozen=True)
class PartitionSequence:
    """The refinement sequence associated with a coloring.

    ``steps[i]`` pairs the i-th partition with its splitter, the least
    color disconnected inside some class of that partition; ``steps[0]``
    always holds the one-class partition. ``terminal`` is the first
    partition on which every color is connected within every class. Past
    the recorded steps the sequence is constant by convention: partitions
    equal ``terminal`` and splitters equal the ``k + 1`` sentinel.
    """

    k: int
    steps: tuple[SequenceStep, ...]
    terminal: Partition

    @property
    def terminal_splitter(self) -> int:
        return self.k + 1

    def partition_at(self, i: int) -> Partition:
        if i < len(self.steps):
            return self.steps[i].partition
        return self.terminal

    def splitter_at(self, i: int) -> int:
        if i < len(self.steps):
            return self.steps[i].splitter
        return self.terminal_splitter


def build_sequence(g: MultiGraph, t: KPartition) -> PartitionSequence:
    """Compute the partition sequence of ``t`` exactly from its definition.

    Each round scans colors in increasing order; the first color that is
    disconnected inside some class becomes the splitter and every class is
    replaced by that color's components within it. Rounds strictly refine,
    so there are at most ``n - 1`` steps.
    """
    if t.m != g.m:
        raise ValueError("coloring does not match the graph's edge count")
    color_edges = [t.edges_of_color(c) for c in range(1, t.k + 1)]
    current = Partition.trivial(g.n)
    steps: list[SequenceStep] = []
    while True:
        for color in range(1, t.k + 1):
            refined = restrict_components(g, color_edges[color - 1], current)
            if refined != current:
                steps.append(SequenceStep(current, color))
                current = refined
                break
        else:
            return PartitionSequence(t.k, tuple(steps), current)


def edge_levels(g: MultiGraph, t: KPartition, seq: PartitionSequence) -> LevelMap:
    """Level of every edge: the last index at which its ends share a class.

    Computed in one pass over the sequence by recording, for each edge,
    the first index at which its endpoints separate, minus one. Loops and
    edges inside a terminal class get ``INFINITE_LEVEL``.
    """
    if t.m != g.m:
        raise ValueError("coloring does not match the graph's edge count")
    partitions = [step.partition for step in seq.steps] + [seq.terminal]
    levels: list[Level] = [INFINITE_LEVEL] * g.m
    undecided = [e for e in range(g.m) if not g.is_loop(e)]
    for i in range(1, len(partitions)):
        class_of = partitions[i].class_of
        remaining: list[EdgeId] = []
        for e in undecided:
            u, v = g.edges[e]
            if class_of[u] != class_of[v]:
                levels[e] = i - 1
            else:
                remaining.append(e)
        undecided = remaining
    return tuple(levels)


def precedes(a: KPartition, b: KPartition, g: MultiGraph) -> bool:
    """Strict improvement order on colorings of the same graph.

    ``a`` precedes ``b`` when, at the first index where their sequences
    differ, either ``a``'s partition strictly refines ``b``'s, or the
    partitions agree and ``a``'s splitter is smaller. The order is partial;
    incomparable or equal sequences simply yield False.
    """
    if a.k != b.k:
        raise ValueError("colorings use different numbers of colors")
    if a.m != g.m or b.m != g.m:
        raise ValueError("coloring does not match the graph's edge count")
    seq_a = build_sequence(g, a)
    seq_b = build_sequence(g, b)
    last = max(len(seq_a.steps), len(seq_b.steps))
    for i in range(last + 1):
        pa, pb = seq_a.partition_at(i), seq_b.partition_at(i)
        if pa != pb:
            return pa.strictly_refines(pb)
        ca, cb = seq_a.splitter_at(i), seq_b.splitter_at(i)
        if ca != cb:
            return ca < cb
    return False
