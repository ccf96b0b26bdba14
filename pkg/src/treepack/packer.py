"""Staged spanning-tree packing by edge exchange.

``pack(g, k)`` builds k pairwise edge-disjoint spanning trees one at a
time. Within a stage, colors ``1..s-1`` are the trees fixed so far and
color ``s`` is the remainder. While the remainder is disconnected, either
the terminal partition of the current sequence certifies that no packing
exists (too few remainder edges cross it), or some remainder edge of
finite level lies on a cycle and can be exchanged into the tree color
that splits its level, strictly improving the coloring. Improvement is
strict in a partial order on a finite set, so stages terminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .kpartition import (
    INFINITE_LEVEL,
    KPartition,
    PartitionSequence,
    build_sequence,
    edge_levels,
)
from .multigraph import (
    DisjointSets,
    EdgeId,
    MultiGraph,
    components,
    cycle_edges,
    fundamental_cycle,
)
from .partition import Partition


class InternalInvariantError(RuntimeError):
    """A guarantee of the exchange argument failed; indicates a bug, not an input."""


@dataclass(frozen=True)
class ExchangeTrace:
    """Record of one exchange: what moved, where, and why it was legal.

    ``e`` is the minimum-level cycle edge of the remainder color, ``m`` its
    level and ``class_p`` the class at level ``m`` containing both its
    ends. ``cycle`` is the fundamental cycle of ``e`` in tree color
    ``c_m``; ``e_prime`` is its minimum-level edge, of level ``j < m``,
    with both ends in ``class_q`` at level ``j``. Every cycle vertex lies
    in ``class_q``.
    """

    e: EdgeId
    m: int
    class_p: tuple[int, ...]
    c_m: int
    cycle: tuple[EdgeId, ...]
    e_prime: EdgeId
    j: int
    class_q: tuple[int, ...]


@dataclass(frozen=True)
class ExchangeEvent:
    """One exchange as observed by a ``pack``/``run_stage`` callback."""

    colors: int
    before: KPartition
    after: KPartition
    sequence: PartitionSequence
    trace: ExchangeTrace


@dataclass(frozen=True)
class StageOutcome:
    """Result of one stage: a connected remainder or a certificate."""

    trees: tuple[frozenset[EdgeId], ...] | None
    rest: frozenset[EdgeId] | None
    certificate: Partition | None
    exchanges: int
    traces: tuple[ExchangeTrace, ...]


@dataclass(frozen=True)
class PackResult:
    """Either ``k`` edge-disjoint spanning trees or a violating partition."""

    k: int
    trees: tuple[frozenset[EdgeId], ...] | None
    certificate: Partition | None
    exchanges: int
    traces: tuple[ExchangeTrace, ...]

    @property
    def verdict(self) -> str:
        return "packing" if self.trees is not None else "certificate"


OnExchange = Callable[[ExchangeEvent], None]


def _is_spanning_tree(g: MultiGraph, edge_ids: Iterable[EdgeId]) -> bool:
    ids = list(edge_ids)
    if len(ids) != g.n - 1 or any(g.is_loop(e) for e in ids):
        return False
    return components(g, ids).num_classes <= 1


def density_check(
    g: MultiGraph, t: KPartition, seq: PartitionSequence
) -> Partition | None:
    """Certificate test at the terminal partition of the sequence.

    With colors ``1..k-1`` spanning trees and color ``k`` disconnected,
    each tree contributes exactly ``|P| - 1`` edges across the terminal
    partition ``P``. If fewer than ``|P| - 1`` remainder edges cross ``P``,
    the total crossing count is below ``k * (|P| - 1)`` and ``P`` is
    returned as a certificate; otherwise None is returned and a finite-level
    remainder edge on a cycle is guaranteed to exist.
    """
    k = t.k
    for color in range(1, k):
        if not _is_spanning_tree(g, t.edges_of_color(color)):
            raise InternalInvariantError(f"color {color} is not a spanning tree")
    if components(g, t.edges_of_color(k)).num_classes <= 1:
        raise InternalInvariantError("remainder color is already connected")
    terminal = seq.terminal
    crossing = 0
    for e in t.edges_of_color(k):
        u, v = g.edges[e]
        if terminal.class_of[u] != terminal.class_of[v]:
            crossing += 1
    if crossing < terminal.num_classes - 1:
        return terminal
    return None


def _exchange_from(
    g: MultiGraph, t: KPartition, seq: PartitionSequence
) -> tuple[KPartition, ExchangeTrace]:
    k = t.k
    levels = edge_levels(g, t, seq)
    on_cycles = cycle_edges(g, t.edges_of_color(k))
    finite = [e for e in sorted(on_cycles) if levels[e] != INFINITE_LEVEL]
    if not finite:
        raise InternalInvariantError("no finite-level cycle edge in the remainder")
    e = min(finite, key=lambda eid: (levels[eid], eid))
    m = int(levels[e])

    part_m = seq.partition_at(m)
    u, v = g.edges[e]
    if part_m.class_of[u] != part_m.class_of[v]:
        raise InternalInvariantError("selected edge spans two classes at its level")
    class_p = part_m.members(part_m.class_of[u])
    if m >= len(seq.steps):
        raise InternalInvariantError("finite level beyond the last refinement step")
    c_m = seq.steps[m].splitter
    if not 1 <= c_m <= k - 1:
        raise InternalInvariantError(f"splitter at the selected level is {c_m}, not a tree color")

    cycle = fundamental_cycle(g, t.edges_of_color(c_m), e)
    e_prime = min(cycle, key=lambda eid: (levels[eid], eid))
    if levels[e_prime] == INFINITE_LEVEL or levels[e_prime] >= m:
        raise InternalInvariantError("fundamental cycle has no edge below the selected level")
    j = int(levels[e_prime])

    part_j = seq.partition_at(j)
    x, y = g.edges[e_prime]
    if part_j.class_of[x] != part_j.class_of[y]:
        raise InternalInvariantError("exchanged-out edge spans two classes at its level")
    class_q = part_j.members(part_j.class_of[x])
    inside = set(class_q)
    for eid in cycle:
        a, b = g.edges[eid]
        if a not in inside or b not in inside:
            raise InternalInvariantError("fundamental cycle leaves its low-level class")

    after = t.recolor({e: c_m, e_prime: k})
    trace = ExchangeTrace(
        e=e,
        m=m,
        class_p=class_p,
        c_m=c_m,
        cycle=tuple(cycle),
        e_prime=e_prime,
        j=j,
        class_q=class_q,
    )
    return after, trace


def exchange_step(g: MultiGraph, t: KPartition) -> tuple[KPartition, ExchangeTrace]:
    """One improving exchange between the remainder color and a tree color.

    Picks the minimum-level remainder edge ``e`` lying on a cycle (ties by
    lowest id), moves it into the tree color that splits its level, and
    returns the minimum-level edge of the resulting fundamental cycle to
    the remainder. Requires that ``density_check`` returned None for the
    same coloring.
    """
    return _exchange_from(g, t, build_sequence(g, t))


def run_stage(
    g: MultiGraph,
    trees: Iterable[Iterable[EdgeId]],
    rest: Iterable[EdgeId],
    *,
    cap: int | None = None,
    on_exchange: OnExchange | None = None,
) -> StageOutcome:
    """Exchange until the remainder color is connected or a certificate appears.

    ``trees`` are the spanning trees fixed so far (exchanges may rotate
    edges through them, but they stay spanning trees); ``rest`` is every
    remaining edge. ``cap`` bounds the number of exchanges as a safety
    guard; exceeding it raises InternalInvariantError.
    """
    tree_sets = [frozenset(tree) for tree in trees]
    colors = len(tree_sets) + 1
    t = KPartition.from_edge_sets(colors, [*tree_sets, frozenset(rest)], g.m)
    if cap is None:
        cap = max(1, colors * g.n * g.m)

    exchanges = 0
    traces: list[ExchangeTrace] = []
    while True:
        rest_ids = t.edges_of_color(colors)
        if components(g, rest_ids).num_classes <= 1:
            final_trees = tuple(
                frozenset(t.edges_of_color(c)) for c in range(1, colors)
            )
            return StageOutcome(
                trees=final_trees,
                rest=frozenset(rest_ids),
                certificate=None,
                exchanges=exchanges,
                traces=tuple(traces),
            )
        seq = build_sequence(g, t)
        certificate = density_check(g, t, seq)
        if certificate is not None:
            return StageOutcome(
                trees=None,
                rest=None,
                certificate=certificate,
                exchanges=exchanges,
                traces=tuple(traces),
            )
        if exchanges >= cap:
            raise InternalInvariantError(f"exchange cap {cap} exceeded")
        after, trace = _exchange_from(g, t, seq)
        exchanges += 1
        traces.append(trace)
        if on_exchange is not None:
            on_exchange(
                ExchangeEvent(
                    colors=colors, before=t, after=after, sequence=seq, trace=trace
                )
            )
        t = after


def greedy_spanning_tree(
    g: MultiGraph, edge_ids: Iterable[EdgeId], order: str = "asc"
) -> frozenset[EdgeId]:
    """Spanning tree of the connected subgraph ``(V, edge_ids)``, greedily.

    Scans edges by id (``asc`` or ``desc``) and keeps every edge joining
    two components; loops never qualify.
    """
    if order not in ("asc", "desc"):
        raise ValueError("order must be 'asc' or 'desc'")
    ids = sorted(edge_ids, reverse=(order == "desc"))
    ds = DisjointSets(g.n)
    chosen = []
    for e in ids:
        u, v = g.edges[e]
        if u != v and ds.union(u, v):
            chosen.append(e)
    if len(chosen) != g.n - 1:
        raise InternalInvariantError("edge set does not span a connected graph")
    return frozenset(chosen)


def pack(
    g: MultiGraph,
    k: int,
    *,
    cap: int | None = None,
    seedtree_order: str = "asc",
    on_exchange: OnExchange | None = None,
) -> PackResult:
    """Find k edge-disjoint spanning trees or a violating partition.

    Trees are extracted one stage at a time; any stage certificate is also
    a certificate for the full ``k`` since a violation of ``t * (|P| - 1)``
    at stage ``t <= k`` implies one of ``k * (|P| - 1)``. ``k = 0`` and
    single-vertex graphs succeed vacuously. Loops can never enter a tree
    and simply stay in the remainder.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    limit = cap if cap is not None else max(1, k * g.n * g.m)

    trees: list[frozenset[EdgeId]] = []
    rest = frozenset(range(g.m))
    exchanges = 0
    traces: list[ExchangeTrace] = []
    for _stage in range(1, k + 1):
        outcome = run_stage(g, trees, rest, cap=limit, on_exchange=on_exchange)
        exchanges += outcome.exchanges
        traces.extend(outcome.traces)
        if outcome.certificate is not None:
            return PackResult(
                k=k,
                trees=None,
                certificate=outcome.certificate,
                exchanges=exchanges,
                traces=tuple(traces),
            )
        assert outcome.trees is not None and outcome.rest is not None
        new_tree = greedy_spanning_tree(g, outcome.rest, seedtree_order)
        trees = [*outcome.trees, new_tree]
        rest = outcome.rest - new_tree
    return PackResult(
        k=k,
        trees=tuple(trees),
        certificate=None,
        exchanges=exchanges,
        traces=tuple(traces),
    )


def stp_number(g: MultiGraph, *, cap: int | None = None) -> tuple[int, Partition]:
    """Largest k packing k spanning trees, plus the certificate for k + 1.

    Runs ``pack`` for increasing k; the first failure at some ``k`` yields
    ``(k - 1, certificate)``. A failure is guaranteed by
    ``k = m // (n - 1) + 1``, where the one-vertex classes alone violate
    the count. Graphs with fewer than two vertices pack every k vacuously
    and are rejected.
    """
    if g.n <= 1:
        raise ValueError("packing number is unbounded for graphs with n <= 1")
    ceiling = g.m // (g.n - 1) + 1
    for k in range(1, ceiling + 1):
        result = pack(g, k, cap=cap)
        if result.certificate is not None:
            return k - 1, result.certificate
    raise InternalInvariantError("no certificate at the arithmetic ceiling")
