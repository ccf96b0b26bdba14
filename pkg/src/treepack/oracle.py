"""Brute-force ground truth: partition enumeration and result validators.

Everything here is independent of the packer so the two can check each
other: the packing condition is decided by exhaustive minimization over
all vertex partitions, and for very small inputs an exhaustive search
over edge assignments decides existence without using the partition
condition at all.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, NamedTuple

from .multigraph import EdgeId, MultiGraph, components, quotient
from .partition import Partition

# Bell(12) = 4,213,597 partitions is the practical enumeration ceiling.
MAX_ENUMERATION_N = 12


class DensityReport(NamedTuple):
    """Minimum of ``crossing(P) - k * (|P| - 1)`` and a partition achieving it."""

    margin: int
    witness: Partition


def _restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """All restricted growth strings of length n, lexicographically.

    The yielded list is reused between iterations; copy it to keep it.
    """
    labels = [0] * n
    # bound[i] = 1 + max(labels[:i]); position i may grow up to bound[i].
    bound = [1] * n
    while True:
        yield labels
        i = n - 1
        while i >= 1 and labels[i] == bound[i]:
            i -= 1
        if i == 0:
            return
        labels[i] += 1
        new_bound = max(bound[i], labels[i] + 1)
        for j in range(i + 1, n):
            labels[j] = 0
            bound[j] = new_bound


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of ``{0, ..., n-1}`` exactly once.

    Streams in lexicographic restricted-growth-string order: the one-class
    partition first, singletons last. Nothing is stored, so the Bell-number
    blowup costs time only.
    """
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise ValueError(f"n must be in 1..{MAX_ENUMERATION_N}")
    for labels in _restricted_growth_strings(n):
        yield Partition.from_class_map(labels)


def density_margin(g: MultiGraph, k: int) -> DensityReport:
    """Exact minimum of ``crossing(P) - k * (|P| - 1)`` over all partitions.

    A negative margin means the witness certifies that no k packing
    exists. Ties keep the first partition in enumeration order.
    """
    if not 1 <= g.n <= MAX_ENUMERATION_N:
        raise ValueError(f"vertex count must be in 1..{MAX_ENUMERATION_N}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    best_margin: int | None = None
    best_labels: list[int] | None = None
    for labels in _restricted_growth_strings(g.n):
        crossing = 0
        for u, v in g.edges:
            if labels[u] != labels[v]:
                crossing += 1
        margin = crossing - k * max(labels)
        if best_margin is None or margin < best_margin:
            best_margin = margin
            best_labels = list(labels)
    assert best_margin is not None and best_labels is not None
    return DensityReport(best_margin, Partition.from_class_map(best_labels))


def verify_packing(
    g: MultiGraph, trees: Iterable[Iterable[EdgeId]], k: int
) -> tuple[bool, str]:
    """Check that ``trees`` really are k disjoint spanning trees of ``g``.

    Returns ``(ok, detail)`` where ``detail`` names the first violated
    property: count, disjointness, loops, edge count, or connectivity.
    """
    tree_lists = [list(tree) for tree in trees]
    if len(tree_lists) != k:
        return False, f"expected {k} trees, found {len(tree_lists)}"
    used: dict[EdgeId, int] = {}
    for index, ids in enumerate(tree_lists):
        if len(set(ids)) != len(ids):
            return False, f"tree {index} repeats an edge id"
        for e in ids:
            if not 0 <= e < g.m:
                return False, f"tree {index} uses unknown edge id {e}"
            if e in used:
                return False, f"trees {used[e]} and {index} share edge {e}"
            used[e] = index
        for e in ids:
            if g.is_loop(e):
                return False, f"tree {index} contains loop edge {e}"
        if len(ids) != g.n - 1:
            return False, f"tree {index} has {len(ids)} edges, expected {g.n - 1}"
        if components(g, ids).num_classes > 1:
            return False, f"tree {index} is not connected"
    return True, "ok"


def verify_certificate(g: MultiGraph, p: Partition, k: int) -> tuple[bool, str]:
    """Check the violation ``|E(G/P)| < k * (|P| - 1)`` for the given partition."""
    if p.n != g.n:
        raise ValueError("partition does not match the graph's vertex set")
    crossing = quotient(g, p).m
    bound = k * (p.num_classes - 1)
    if crossing < bound:
        return True, f"{crossing} crossing edges < bound {bound}"
    return False, f"{crossing} crossing edges, needs fewer than {bound}"


def exists_packing_exhaustive(g: MultiGraph, k: int) -> bool:
    """Decide existence by trying every assignment of edges to k trees.

    Each edge gets a slot in ``0..k`` (0 = unused, since a packing need
    not cover every edge) and slots ``1..k`` must all be spanning trees.
    Only meant for tiny inputs; the search space has ``(k+1)**m`` points.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return True
    if (k + 1) ** g.m > 4_000_000:
        raise ValueError("graph too large for exhaustive search")
    if g.n >= 2 and g.m < k * (g.n - 1):
        return False
    for assignment in product(range(k + 1), repeat=g.m):
        ok = True
        for color in range(1, k + 1):
            ids = [e for e in range(g.m) if assignment[e] == color]
            if len(ids) != g.n - 1 or any(g.is_loop(e) for e in ids):
                ok = False
                break
            if components(g, ids).num_classes > 1:
                ok = False
                break
        if ok:
            return True
    return False
