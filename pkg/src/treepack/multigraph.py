"""Multigraph values and the structural queries used by the packer.

Vertices and edges are dense integers assigned in construction order.
Parallel edges and loops are allowed; an edge keeps its id no matter how
it is recolored downstream, so edge sets are always sets of ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .partition import Partition

VertexId = int
EdgeId = int


class NoCycleError(ValueError):
    """Raised when the requested fundamental cycle does not exist."""


class DisjointSets:
    """Union-find over ``{0, ..., n-1}`` with union by size and path compression."""

    def __init__(self, n: int):
        self._parent = list(range(n))
        self._size = [1] * n

    def find(self, v: int) -> int:
        root = v
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[v] != root:
            self._parent[v], v = root, self._parent[v]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; True if they were distinct."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return True


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph on vertices ``0..n-1``.

    ``edges[i]`` is the unordered endpoint pair of edge id ``i``. Edge
    order is construction order and is never permuted, which keeps every
    downstream choice deterministic.
    """

    n: int
    edges: tuple[tuple[VertexId, VertexId], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {eid} endpoint out of range: ({u}, {v})")

    @property
    def m(self) -> int:
        return len(self.edges)

    def endpoints(self, e: EdgeId) -> tuple[VertexId, VertexId]:
        return self.edges[e]

    def is_loop(self, e: EdgeId) -> bool:
        u, v = self.edges[e]
        return u == v


def _check_edge_ids(g: MultiGraph, edge_ids: Iterable[EdgeId]) -> list[EdgeId]:
    ids = sorted(edge_ids)
    if ids and not (0 <= ids[0] and ids[-1] < g.m):
        raise ValueError("edge id out of range")
    return ids


def quotient(g: MultiGraph, p: Partition) -> MultiGraph:
    """Contract each class of ``p`` to a single vertex.

    The result has one vertex per class (in canonical class order) and one
    edge for every edge of ``g`` whose endpoints lie in distinct classes;
    edges inside a class, including loops, are dropped. Multiplicities are
    preserved and the surviving edges keep their relative order.
    """
    if p.n != g.n:
        raise ValueError("partition does not match the graph's vertex set")
    kept = []
    for u, v in g.edges:
        cu, cv = p.class_of[u], p.class_of[v]
        if cu != cv:
            kept.append((cu, cv))
    return MultiGraph(p.num_classes, tuple(kept))


def components(g: MultiGraph, edge_ids: Iterable[EdgeId]) -> Partition:
    """Connected components of the spanning subgraph ``(V, edge_ids)``."""
    ds = DisjointSets(g.n)
    for e in _check_edge_ids(g, edge_ids):
        u, v = g.edges[e]
        ds.union(u, v)
    return Partition.from_class_map(ds.find(v) for v in range(g.n))


def restrict_components(
    g: MultiGraph, edge_ids: Iterable[EdgeId], p: Partition
) -> Partition:
    """Split every class of ``p`` into components of the given edge set.

    Only edges with both endpoints inside a single class of ``p`` count;
    the result always refines ``p``.
    """
    if p.n != g.n:
        raise ValueError("partition does not match the graph's vertex set")
    ds = DisjointSets(g.n)
    for e in _check_edge_ids(g, edge_ids):
        u, v = g.edges[e]
        if p.class_of[u] == p.class_of[v]:
            ds.union(u, v)
    return Partition.from_class_map(ds.find(v) for v in range(g.n))


def cycle_edges(g: MultiGraph, edge_ids: Iterable[EdgeId]) -> frozenset[EdgeId]:
    """Edges of the subgraph ``(V, edge_ids)`` that lie on some cycle.

    These are the non-bridges: loops and both members of a parallel pair
    always qualify. Bridges are found with one iterative low-link pass.
    """
    ids = _check_edge_ids(g, edge_ids)
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e in ids:
        u, v = g.edges[e]
        if u == v:
            continue  # a loop is trivially a cycle edge
        adjacency[u].append((v, e))
        adjacency[v].append((u, e))

    disc = [-1] * g.n
    low = [0] * g.n
    bridges: set[EdgeId] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # Frames hold [vertex, entering edge id, adjacency cursor].
        frames: list[list[int]] = [[root, -1, 0]]
        while frames:
            v, entering, cursor = frames[-1]
            if cursor < len(adjacency[v]):
                frames[-1][2] += 1
                w, eid = adjacency[v][cursor]
                if eid == entering:
                    continue  # skip only the exact entering copy (parallels stay)
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    frames.append([w, eid, 0])
                elif disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                frames.pop()
                if frames:
                    parent = frames[-1][0]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                    if low[v] > disc[parent]:
                        bridges.add(entering)
    return frozenset(e for e in ids if e not in bridges)


def fundamental_cycle(
    g: MultiGraph, tree_edge_ids: Iterable[EdgeId], e: EdgeId
) -> tuple[EdgeId, ...]:
    """The unique cycle of ``tree_edge_ids + {e}``, in order along the cycle.

    ``tree_edge_ids`` must be acyclic and must connect the endpoints of
    ``e``; ``e`` itself must be a non-loop edge outside the set. The result
    lists the tree path from one endpoint of ``e`` to the other, then ``e``.

    Raises NoCycleError when the endpoints are not connected in the tree
    edges, and ValueError on the other precondition violations.
    """
    tree_ids = set(_check_edge_ids(g, tree_edge_ids))
    if e in tree_ids:
        raise ValueError("edge already belongs to the tree edge set")
    if not 0 <= e < g.m:
        raise ValueError("edge id out of range")
    u, v = g.edges[e]
    if u == v:
        raise ValueError("a loop has no fundamental cycle through a tree")

    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid in sorted(tree_ids):
        a, b = g.edges[eid]
        adjacency[a].append((b, eid))
        adjacency[b].append((a, eid))

    parent_edge: dict[int, tuple[int, int]] = {u: (-1, -1)}
    queue = [u]
    head = 0
    while head < len(queue) and v not in parent_edge:
        x = queue[head]
        head += 1
        for w, eid in adjacency[x]:
            if w not in parent_edge:
                parent_edge[w] = (x, eid)
                queue.append(w)
    if v not in parent_edge:
        raise NoCycleError("endpoints are not connected in the tree edges")

    path: list[EdgeId] = []
    x = v
    while x != u:
        px, eid = parent_edge[x]
        path.append(eid)
        x = px
    path.reverse()
    return tuple(path) + (e,)
