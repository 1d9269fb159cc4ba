"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s``.  Every criterion is
hard (exact integer equality, zero tolerance) except the scaling check,
which reports its measured growth ratio without failing the suite.
"""

import math
import random
import time
from dataclasses import dataclass

import numpy as np
import pytest

import ncsp
from ncsp.apsp_core import floyd_warshall, subset_dp
from ncsp.decomposition import solve
from ncsp.generator import GeneratorConfig, generate, single_block_instance
from ncsp.graph_core import ForestCycle, build_negative_forest
from ncsp.instance_io import RawInstance, instance_digraph, mixed_to_digraph
from ncsp.oracle import (
    enumerate_cycles_verdict,
    enumerate_mixed_paths,
    enumerate_paths_distances,
    mixed_cycles_ok,
)
from ncsp.path_recon import extract_path
from ncsp.tree_metrics import tree_distances

SEED = 20260808
INSTANCES_PER_DENSITY = 500


@dataclass
class Record:
    arcs: list
    n: int
    g: object
    outcome: object
    oracle_nc: bool
    truth: object  # exact matrix when solved, else None


@pytest.fixture(scope="module")
def stream():
    rng = random.Random(SEED)
    records = []
    t0 = time.perf_counter()
    for density in (0.3, 0.6):
        for _ in range(INSTANCES_PER_DENSITY):
            n = rng.randint(3, 8)
            arcs = [
                (u, v, rng.randint(-5, 5))
                for u in range(1, n + 1)
                for v in range(1, n + 1)
                if u != v and rng.random() < density
            ]
            g = ncsp.prepare(arcs, n)
            out = solve(g)
            nc = enumerate_cycles_verdict(g).nearly_conservative
            truth = enumerate_paths_distances(g) if out.solved else None
            records.append(Record(arcs, n, g, out, nc, truth))
    elapsed = time.perf_counter() - t0
    return records, elapsed


def test_criterion_1_verdict_equivalence(stream):
    records, elapsed = stream
    bad = [r for r in records if r.outcome.solved != r.oracle_nc]
    print(
        f"\nACCEPT-1 {'PASS' if not bad else 'FAIL'}: verdict equals cycle oracle on "
        f"{len(records) - len(bad)}/{len(records)} instances "
        f"(solve+oracle wall time {elapsed:.1f}s, expected < 120s)"
    )
    assert not bad, f"verdict mismatches on {len(bad)} instances, first: {bad[0].arcs}"


def test_criterion_2_distance_equivalence(stream):
    records, _ = stream
    solved = [r for r in records if r.outcome.solved]
    bad = [
        r for r in solved if not np.array_equal(r.truth, r.outcome.distances.values)
    ]
    print(
        f"\nACCEPT-2 {'PASS' if not bad else 'FAIL'}: exact distance equality on "
        f"{len(solved) - len(bad)}/{len(solved)} solved instances"
    )
    assert not bad, f"distance mismatch, first: {bad[0].arcs}"


def test_criterion_3_path_soundness(stream):
    records, _ = stream
    pairs = 0
    for r in records:
        if not r.outcome.solved:
            continue
        d = r.outcome.distances
        pm = r.outcome.predecessors
        for s in range(1, r.n + 1):
            for t in range(1, r.n + 1):
                if s == t or not d.finite(s, t):
                    continue
                path = extract_path(pm, s, t)
                assert path.vertices[0] == s and path.vertices[-1] == t
                assert len(set(path.vertices)) == len(path.vertices), (r.arcs, s, t)
                assert path.weight == d.entry(s, t), (r.arcs, s, t)
                assert len(path.arcs) <= r.n - 1
                pairs += 1
    print(f"\nACCEPT-3 PASS: {pairs} reconstructed paths, all simple and exact")


def test_criterion_4_pipeline_consistency(stream):
    records, _ = stream
    checked = 0
    for r in records:
        forest = build_negative_forest(r.g)
        if isinstance(forest, ForestCycle) or len(forest) > 6:
            continue
        trees = list(forest.trees)
        tables = [tree_distances(t) for t in trees]
        flat = subset_dp(r.g, trees, tables, want_paths=False)
        assert flat.verdict == r.outcome.verdict, r.arcs
        if flat.solved:
            assert np.array_equal(
                flat.distances.values, r.outcome.distances.values
            ), r.arcs
        checked += 1
    print(
        f"\nACCEPT-4 PASS: decomposition equals whole-graph subset DP on "
        f"{checked} instances, entry for entry"
    )


def test_criterion_5_conservative_degenerate():
    rng = random.Random(SEED + 5)
    for trial in range(200):
        n = rng.randint(3, 8)
        arcs = [
            (u, v, rng.randint(0, 10))
            for u in range(1, n + 1)
            for v in range(1, n + 1)
            if u != v and rng.random() < 0.5
        ]
        g = ncsp.prepare(arcs, n)
        assert not g.special_arcs()
        out = solve(g, want_paths=False)
        fw = floyd_warshall(g)
        assert out.solved, trial
        assert np.array_equal(out.distances.values, fw.distances.values), arcs
    print("\nACCEPT-5 PASS: 200 special-free instances equal plain Floyd-Warshall")


def test_criterion_6_mixed_reduction():
    rng = random.Random(SEED + 6)
    solved = 0
    for trial in range(200):
        n = rng.randint(3, 8)
        arcs, edges = [], []
        for u in range(1, n + 1):
            for v in range(u + 1, n + 1):
                if rng.random() >= 0.5:
                    continue
                w = rng.randint(-5, 5)
                kind = rng.random()
                if kind < 0.45:
                    edges.append((u, v, w))
                elif kind < 0.75:
                    arcs.append((u, v, w))
                else:
                    arcs.append((v, u, w))
        inst = RawInstance("ncm", n, arcs=arcs, edges=edges)
        g = mixed_to_digraph(inst)
        out = solve(g)
        assert out.solved == mixed_cycles_ok(n, arcs, edges), (arcs, edges)
        if not out.solved:
            continue
        solved += 1
        truth = enumerate_mixed_paths(n, arcs, edges)
        assert np.array_equal(truth, out.distances.values), (arcs, edges)
    print(
        f"\nACCEPT-6 PASS: 200 mixed instances, {solved} solved, distances match "
        f"the mixed-semantics path oracle exactly"
    )


def test_criterion_7_monotonicity(stream):
    records, _ = stream
    checked = 0
    for r in records:
        forest = build_negative_forest(r.g)
        if isinstance(forest, ForestCycle) or not 1 <= len(forest) <= 4:
            continue
        trees = list(forest.trees)
        tables = [tree_distances(t) for t in trees]
        flat = subset_dp(r.g, trees, tables, want_paths=False)
        if not flat.solved:
            continue
        dm = flat.detail.dist_by_mask
        k = len(trees)
        for small in range(1 << k):
            for big in range(1 << k):
                if small & big == small:
                    assert (dm[small] >= dm[big]).all(), (r.arcs, small, big)
        checked += 1
    print(
        f"\nACCEPT-7 PASS: subset monotonicity over all comparable subset pairs "
        f"on {checked} instances"
    )


def test_criterion_8_scaling_report():
    n = 60
    ks = [2, 4, 6, 8, 10, 12]
    times = {}
    for k in ks:
        inst = single_block_instance(n, k, seed=k)
        g = instance_digraph(inst)
        forest = build_negative_forest(g)
        trees = list(forest.trees)
        tables = [tree_distances(t) for t in trees]
        best = math.inf
        for _ in range(2):
            t0 = time.perf_counter()
            out = subset_dp(g, trees, tables, want_paths=False)
            best = min(best, time.perf_counter() - t0)
        assert out.solved
        times[k] = best
    fit_ks = [k for k in ks if k >= 6]
    xs = np.array(fit_ks, dtype=float)
    ys = np.log2([times[k] for k in fit_ks])
    slope = np.polyfit(xs, ys, 1)[0]
    ratio = 2.0 ** (2.0 * slope)
    rows = "  ".join(f"k={k}:{times[k]*1000:.0f}ms" for k in ks)
    ok = 3.0 <= ratio <= 5.3
    print(
        f"\nACCEPT-8 {'PASS' if ok else 'SOFT-FAIL'} (report-only): growth ratio per "
        f"+2 trees = {ratio:.2f}, target window [3.0, 5.3]; {rows}"
    )
    # report-only by specification: timing noise must not fail the suite


def _check_tree_bracket_uses_only_tree_arcs(path, forest):
    for tree in forest:
        tv = set(tree.vertices)
        hits = [i for i, v in enumerate(path.vertices) if v in tv]
        if len(hits) < 2:
            continue
        pairs = {(u, v) for u in tv for v in tv if u != v and v in dict(tree.adj[u])}
        for a in path.arcs[hits[0] : hits[-1]]:
            assert a.kind == "special" and (a.tail, a.head) in pairs


def test_criterion_9_structural_invariants(stream):
    records, _ = stream
    extra = []
    rng = random.Random(SEED + 9)
    for i in range(12):
        cfg = GeneratorConfig(
            n=rng.randint(8, 16),
            seed=SEED + i,
            arcs=rng.randint(4, 12),
            trees=rng.randint(0, 3),
            scc_count=rng.choice([1, 2, 3]),
            block_count=rng.choice([1, 2]),
        )
        arcs = generate(cfg).arcs
        g = ncsp.prepare(arcs, cfg.n)
        extra.append(Record(arcs, cfg.n, g, solve(g), True, None))
    graphs = 0
    for r in list(records) + extra:
        g = r.g
        specials = {a.pair: a for a in g.special_arcs()}
        looses = {a.pair: a for a in g.arcs if a.kind == "loose"}
        assert len(looses) == len(specials)
        for (v, u), a in looses.items():
            assert a.weight == -specials[(u, v)].weight
        forest = build_negative_forest(g)
        if isinstance(forest, ForestCycle):
            continue
        seen = set()
        for tree in forest:
            assert not seen & set(tree.vertices)
            seen.update(tree.vertices)
            table = tree_distances(tree)
            for u in tree.vertices:
                for v in tree.vertices:
                    if u != v:
                        assert table.d(u, v) + table.d(v, u) < 0
        out = r.outcome
        if not out.solved:
            continue
        vals = out.distances.values
        assert (np.diagonal(vals)[1:] == 0).all()
        dag = out.detail.dag
        for u in range(1, dag.n_star + 1):
            for w, _ in dag.out[u]:
                assert w > u  # ids ascend along topological order: acyclic
        if out.predecessors is not None and len(forest) and r.n <= 8:
            for s in range(1, r.n + 1):
                for t in range(1, r.n + 1):
                    if s != t and out.distances.finite(s, t):
                        _check_tree_bracket_uses_only_tree_arcs(
                            extract_path(out.predecessors, s, t), forest
                        )
        graphs += 1
    print(
        f"\nACCEPT-9 PASS: forest disjointness, loose mirrors, tree antisymmetry, "
        f"condensation acyclicity, zero diagonals and tree-bracket purity on "
        f"{graphs} solved instances"
    )
