"""Anatomy of a single improving exchange.

The remainder color here is disconnected but contains a cycle: a doubled
edge (1,2) whose endpoints end up in different terminal classes, so both
copies have finite level. The exchange takes the lower-id copy (edge e,
level m = 1), walks the fundamental cycle it closes in the tree that
splits level 1, and sends the cycle's lowest-level edge (e', level j = 0)
back to the remainder. The new coloring is strictly greater in the
improvement order, which is exactly why the loop terminates.
"""

from treepack import (
    KPartition,
    MultiGraph,
    build_sequence,
    exchange_step,
    precedes,
)

edges = [(0, 1), (1, 4), (4, 2), (2, 3), (0, 1), (2, 3), (1, 2), (1, 2)]
g = MultiGraph(5, tuple(edges))
t = KPartition.from_edge_sets(2, [range(0, 4), range(4, 8)], g.m)

print("before:", [f"{e}:{g.edges[e]}@c{t.color_of[e]}" for e in range(g.m)])
after, trace = exchange_step(g, t)

print(f"\ne       = {trace.e} {g.edges[trace.e]}   (remainder cycle edge, level m = {trace.m})")
print(f"class P = {trace.class_p}   (class at level m holding both ends of e)")
print(f"c_m     = {trace.c_m}   (tree color that splits level m)")
print(f"cycle C = {trace.cycle}   (fundamental cycle of e in that tree)")
print(f"e'      = {trace.e_prime} {g.edges[trace.e_prime]}   (lowest-level edge of C, level j = {trace.j})")
print(f"class Q = {trace.class_q}   (class at level j; the whole cycle sits inside it)")

print("\nafter: ", [f"{e}:{g.edges[e]}@c{after.color_of[e]}" for e in range(g.m)])
print("improved:", precedes(t, after, g))

old_terminal = build_sequence(g, t).terminal
new_terminal = build_sequence(g, after).terminal
print(f"terminal partition before: {old_terminal}")
print(f"terminal partition after:  {new_terminal}")
