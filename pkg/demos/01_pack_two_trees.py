"""Pack two edge-disjoint spanning trees of K4, then double-check them.

K4 has 6 edges and needs 3 per spanning tree, so a 2-packing must use
every edge. The packer seeds the first tree greedily, discovers that the
leftover triangle misses vertex 0, and repairs it with a single exchange.
"""

from treepack import MultiGraph, density_margin, pack, verify_packing

edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
g = MultiGraph(4, tuple(edges))

result = pack(g, 2)
print(f"verdict:   {result.verdict}")
print(f"exchanges: {result.exchanges}")
for index, tree in enumerate(result.trees, start=1):
    pairs = [g.edges[e] for e in sorted(tree)]
    print(f"tree {index}:    edges {sorted(tree)} = {pairs}")

ok, detail = verify_packing(g, result.trees, 2)
print(f"verified:  {ok} ({detail})")

# The exhaustive oracle agrees: no partition is violated (margin >= 0).
report = density_margin(g, 2)
print(f"oracle:    minimum margin {report.margin} at {report.witness}")
