"""Instance files, the seeded generator, and the subset-DP scaling law.

The cost of one decomposition unit doubles with every extra negative tree
in it (one subset layer more), while everything else stays polynomial.
The mini benchmark at the end makes that visible.
"""

import time

from ncsp.apsp_core import subset_dp
from ncsp.generator import GeneratorConfig, generate, single_block_instance
from ncsp.graph_core import build_negative_forest
from ncsp.instance_io import emit, instance_digraph, parse
from ncsp.tree_metrics import tree_distances

print("A generated mixed instance (negative edges form the trees):")
cfg = GeneratorConfig(n=8, seed=11, arcs=4, trees=2, mixed=True)
text = emit(generate(cfg))
print(text)
assert emit(parse(text)) == text  # canonical round trip, byte for byte

print("Directed instances use 'a' lines only:")
print(emit(generate(GeneratorConfig(n=6, seed=3, arcs=3, trees=1))))

print("Subset-DP wall time against the tree count (one 40-vertex block):")
prev = None
for k in (2, 4, 6, 8):
    inst = single_block_instance(40, k, seed=k)
    g = instance_digraph(inst)
    forest = build_negative_forest(g)
    tables = [tree_distances(t) for t in forest.trees]
    t0 = time.perf_counter()
    out = subset_dp(g, list(forest.trees), tables, want_paths=False)
    dt = time.perf_counter() - t0
    assert out.solved
    ratio = "" if prev is None else f"   x{dt / prev:.1f} over k-2"
    print(f"  k={k:2d}: {dt * 1000:7.1f} ms{ratio}")
    prev = dt
print("Each +2 trees multiplies the subset count by four.")
