import random

import pytest

import ncsp
from ncsp.decomposition import solve
from ncsp.graph_core import Arc, InternalError, build_negative_forest
from ncsp.path_recon import (
    NoPath,
    extract_path,
    predecessors_dp,
    predecessors_tree,
    simplify_walk,
)
from ncsp.tree_metrics import tree_distances
from conftest import TWO_COMP_ARCS, random_arcs


def tree_of(arcs, n):
    (tree,) = build_negative_forest(ncsp.prepare(arcs, n)).trees
    return tree


class TestTreePredecessors:
    def test_path_tree(self):
        tree = tree_of([(1, 2, 1), (2, 1, -2), (2, 3, 1), (3, 2, -2)], 3)
        pm = predecessors_tree(tree)
        assert pm.entry(1, 3) == 2
        assert pm.entry(1, 2) == 1

    def test_single_edge(self):
        tree = tree_of([(1, 2, 2), (2, 1, -5)], 2)
        pm = predecessors_tree(tree)
        assert pm.entry(1, 2) == 1

    def test_star_leaf_to_leaf(self):
        arcs = []
        for leaf in (2, 3):
            arcs += [(1, leaf, 1), (leaf, 1, -2)]
        pm = predecessors_tree(tree_of(arcs, 3))
        assert pm.entry(2, 3) == 1

    def test_extractable(self):
        tree = tree_of([(1, 2, 1), (2, 1, -2), (2, 3, 1), (3, 2, -2)], 3)
        pm = predecessors_tree(tree)
        path = extract_path(pm, 3, 1)
        assert path.vertices == [3, 2, 1]
        assert path.weight == -4


class TestDpPredecessors:
    def test_g1_tree_detour(self, g1):
        out = solve(g1)
        assert out.predecessors.entry(1, 3) == 2

    def test_ordinary_minimum_copies_floyd_warshall(self):
        g = ncsp.prepare([(1, 2, 3), (2, 3, 4)], 3)
        out = solve(g)
        assert out.predecessors.entry(1, 3) == 2
        assert out.predecessors.entry(1, 2) == 1

    def test_tree_leg_ending_at_target(self, g1):
        # d(4, 2) = 6 enters the tree at 1 and ends on the tree arc 1 -> 2
        out = solve(g1)
        assert out.distances.entry(4, 2) == 6
        assert out.predecessors.entry(4, 2) == 1

    def test_per_subset_tables_cover_all_masks(self, g5):
        from ncsp.apsp_core import subset_dp

        forest = build_negative_forest(g5)
        trees = list(forest.trees)
        tables = [tree_distances(t) for t in trees]
        out = subset_dp(g5, trees, tables)
        preds = predecessors_dp(out.detail)
        assert len(preds) == 4
        assert all(p is not None for p in preds)


class TestCondensedPredecessors:
    def test_cross_component_entry(self):
        out = solve(ncsp.prepare(TWO_COMP_ARCS, 3))
        # shortest 1 -> 3 route is 1, 2, 3; t is entered by the cross arc
        assert out.predecessors.entry(1, 3) == 2
        assert out.predecessors.entry(3, 1) is None

    def test_same_component_pairs_copy_component_entry(self):
        out = solve(ncsp.prepare(TWO_COMP_ARCS, 3))
        assert out.predecessors.entry(2, 1) == 2
        assert out.predecessors.entry(1, 2) == 1

    def test_entry_through_component_interior(self):
        # 1 -> 2 crosses, then travels inside the pair {2, 3}
        arcs = [(1, 2, 5), (2, 3, 2), (3, 2, -4)]
        out = solve(ncsp.prepare(arcs, 3))
        assert out.distances.entry(1, 3) == 7
        assert out.predecessors.entry(1, 3) == 2


class TestExtractPath:
    def test_g1_query(self, g1):
        out = solve(g1)
        path = extract_path(out.predecessors, 1, 3)
        assert path.vertices == [1, 2, 3]
        assert path.weight == 3
        assert [a.kind for a in path.arcs] == ["special", "ordinary"]

    def test_empty_path(self, g1):
        out = solve(g1)
        path = extract_path(out.predecessors, 2, 2)
        assert path.vertices == [2] and path.weight == 0 and not path.arcs

    def test_no_path(self):
        out = solve(ncsp.prepare(TWO_COMP_ARCS, 3))
        with pytest.raises(NoPath):
            extract_path(out.predecessors, 3, 1)

    def test_out_of_range(self, g1):
        out = solve(g1)
        with pytest.raises(ValueError):
            extract_path(out.predecessors, 0, 3)

    def test_walk_collapse_keeps_tree_detour(self):
        # The optimum for (4, 3) threads the tree through 1 -> 2 even though
        # the ordinary-only route 4, 5, 3 looks shorter pair by pair.
        arcs = [
            (1, 2, 2), (2, 1, -5),
            (4, 1, 4), (2, 3, 1), (4, 5, 8), (5, 3, 1), (3, 4, 50),
        ]
        out = solve(ncsp.prepare(arcs, 5))
        assert out.solved
        assert out.distances.entry(4, 3) == 7
        path = extract_path(out.predecessors, 4, 3)
        assert path.vertices == [4, 1, 2, 3]
        assert path.weight == 7

    def test_rows_need_not_walk_but_extraction_is_exact(self):
        # d(1,4) = 5 along 1,2,3,4 and d(1,3) = 9 along 1,4,3: one matrix row
        # cannot serve both pairs by naive walking, extraction still must.
        arcs = [(1, 2, 0), (2, 3, 10), (3, 4, -5), (4, 3, 3), (1, 4, 6)]
        out = solve(ncsp.prepare(arcs, 4))
        assert out.distances.entry(1, 4) == 5
        assert out.distances.entry(1, 3) == 9
        assert out.predecessors.entry(1, 4) == 3
        assert out.predecessors.entry(1, 3) == 4
        p14 = extract_path(out.predecessors, 1, 4)
        p13 = extract_path(out.predecessors, 1, 3)
        assert p14.vertices == [1, 2, 3, 4] and p14.weight == 5
        assert p13.vertices == [1, 4, 3] and p13.weight == 9

    def test_extracted_paths_never_need_loose_arcs(self):
        rng = random.Random(616)
        for _ in range(80):
            n = rng.randint(3, 7)
            g = ncsp.prepare(random_arcs(rng, n, 0.5), n)
            out = solve(g)
            if not out.solved:
                continue
            for s in range(1, n + 1):
                for t in range(1, n + 1):
                    if s == t or not out.distances.finite(s, t):
                        continue
                    # the named predecessor is the tail of a real arc into t
                    assert g.has_arc(out.predecessors.entry(s, t), t)
                    path = extract_path(out.predecessors, s, t)
                    assert all(a.kind != "loose" for a in path.arcs)
                    assert path.weight == out.distances.entry(s, t)

    def test_loose_step_annotation(self):
        from ncsp.path_recon import _finish

        walk = [Arc(1, 2, 5, "loose"), Arc(2, 3, 1, "ordinary")]
        res = _finish(walk, 1)
        assert res.arcs[0].mirrors == Arc(2, 1, -5, "special")
        assert res.arcs[1].mirrors is None


class TestSimplifyWalk:
    def test_zero_excursion_cancelled(self):
        walk = [
            Arc(1, 2, 4, "ordinary"),
            Arc(2, 3, 2, "ordinary"),
            Arc(3, 2, -2, "ordinary"),
            Arc(2, 4, 1, "ordinary"),
        ]
        kept = simplify_walk(walk, 1)
        assert [(a.tail, a.head) for a in kept] == [(1, 2), (2, 4)]

    def test_nonzero_excursion_rejected(self):
        walk = [Arc(1, 2, 4, "ordinary"), Arc(2, 1, 1, "ordinary")]
        with pytest.raises(InternalError):
            simplify_walk(walk, 1)

    def test_disconnected_walk_rejected(self):
        with pytest.raises(InternalError):
            simplify_walk([Arc(1, 2, 1, "ordinary"), Arc(3, 4, 1, "ordinary")], 1)
