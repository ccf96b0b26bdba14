"""Watch the partition sequence refine, and read off edge levels.

Color 1 is a star at vertex 0; color 2 connects {0,1,2,3} and {4,5,6,7}
separately. The sequence starts with all vertices in one class, first
splits on color 2 (the least disconnected color), then splits the right
half into singletons because the star has no edges inside it. An edge's
level is the last index at which its endpoints still share a class.
"""

from treepack import INFINITE_LEVEL, KPartition, MultiGraph, build_sequence, edge_levels

star = [(0, i) for i in range(1, 8)]
rest = [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]
g = MultiGraph(8, tuple(star + rest))
t = KPartition.from_edge_sets(2, [range(0, 7), range(7, 13)], g.m)

seq = build_sequence(g, t)
for index, step in enumerate(seq.steps):
    print(f"P_{index} = {step.partition}   splits on color {step.splitter}")
print(f"P_{len(seq.steps)} = {seq.terminal}   (terminal: every color connected inside every class)")

levels = edge_levels(g, t, seq)
print("\nedge levels:")
for e, (u, v) in enumerate(g.edges):
    level = "inf" if levels[e] == INFINITE_LEVEL else levels[e]
    color = t.color_of[e]
    print(f"  edge {e:2d} ({u},{v}) color {color}: level {level}")
