"""The spanning-tree packing number: largest k that still packs.

K6 has 15 edges and 5 per tree, so 3 trees exactly exhaust it; a fourth
is impossible because even the finest partition offers only 15 < 4 * 5
crossing edges. A tree packs exactly one copy of itself, and anything
disconnected packs none.
"""

from treepack import MultiGraph, pack, stp_number, verify_packing

k6 = MultiGraph(6, tuple((u, v) for u in range(6) for v in range(u + 1, 6)))
k_max, certificate = stp_number(k6)
print(f"K6: packs {k_max} trees; k = {k_max + 1} is refuted by {certificate}")
trees = pack(k6, k_max).trees
print(f"    verified: {verify_packing(k6, trees, k_max)}")

path = MultiGraph(5, ((0, 1), (1, 2), (2, 3), (3, 4)))
k_max, certificate = stp_number(path)
print(f"path: packs {k_max}; k = {k_max + 1} refuted by {certificate}")

split = MultiGraph(4, ((0, 1), (2, 3)))
k_max, certificate = stp_number(split)
print(f"disconnected: packs {k_max}; k = 1 refuted by {certificate}")
