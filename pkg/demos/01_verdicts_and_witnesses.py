"""What "nearly conservative" means, and how verdicts are refused.

A weight function is nearly conservative when every negative directed cycle
has exactly two arcs: an opposite pair uv, vu with c(uv) + c(vu) < 0.
Those pairs ("special" pairs) are the only sanctioned source of negativity;
everything else must be cycle-nonnegative.
"""

import ncsp

print("1. A lone special pair is fine: the only negative cycle has two arcs.")
out = ncsp.solve_arcs([(1, 2, 2), (2, 1, -5)], 2)
print("   verdict:", out.verdict)
print("   d(1,2) =", out.distances.entry(1, 2), "  d(2,1) =", out.distances.entry(2, 1))

print()
print("2. Special pairs must form a forest.  Three pairs in a triangle")
print("   close two opposite directed triangles whose weights sum below zero,")
print("   so one of them is a negative cycle with three arcs.")
triangle = [(1, 2, 1), (2, 1, -2), (2, 3, 1), (3, 2, -2), (3, 1, 1), (1, 3, -2)]
out = ncsp.solve_arcs(triangle, 3)
print("   verdict:", out.verdict)
print("   witness:", out.witness)

print()
print("3. Even with a clean forest, an ordinary route that undercuts a tree")
print("   closes a negative three-arc cycle.  Here 1->3->2 costs 2 while the")
print("   tree pays only -5 back from 2 to 1: the cycle 1,3,2 sums to -3.")
out = ncsp.solve_arcs([(1, 2, 2), (2, 1, -5), (1, 3, 1), (3, 2, 1)], 3)
print("   verdict:", out.verdict)
w = out.witness
print(f"   witness: pair ({w.u}, {w.v}), outside route {w.outside}, "
      f"tree pays {w.tree_back}, sum {w.outside + w.tree_back}")
