import random

import ncsp
from ncsp.graph_core import build_negative_forest
from ncsp.tree_metrics import tree_distances


def naive_tree_distance(tree, s, t):
    """Independent oracle: recursive walk over the unique tree path."""
    if s == t:
        return 0
    def dfs(v, target, seen):
        if v == target:
            return 0
        for w, wt in tree.adj[v]:
            if w in seen:
                continue
            seen.add(w)
            rest = dfs(w, target, seen)
            if rest is not None:
                return wt + rest
        return None
    return dfs(s, t, {s})


def make_tree(arcs, n):
    forest = build_negative_forest(ncsp.prepare(arcs, n))
    (tree,) = forest.trees
    return tree


def test_path_tree_sums():
    tree = make_tree([(1, 2, 2), (2, 1, -3), (2, 3, 1), (3, 2, -4)], 3)
    table = tree_distances(tree)
    assert table.d(1, 3) == 3
    assert table.d(3, 1) == -7
    assert table.d(1, 2) == 2
    assert table.d(2, 1) == -3


def test_single_edge_tree():
    tree = make_tree([(1, 2, 2), (2, 1, -5)], 2)
    table = tree_distances(tree)
    assert table.d(1, 2) == 2
    assert table.d(2, 1) == -5
    assert table.d(1, 1) == 0


def test_star_tree_leaf_to_leaf():
    # center 1, leaves 2..4; every pair weighs 1 out, -2 back
    arcs = []
    for leaf in (2, 3, 4):
        arcs += [(1, leaf, 1), (leaf, 1, -2)]
    tree = make_tree(arcs, 4)
    table = tree_distances(tree)
    # frozen from the recursive oracle: -2 up to the center, 1 back out
    assert naive_tree_distance(tree, 2, 3) == -1
    assert table.d(2, 3) == -1


def random_tree_arcs(rng, n):
    arcs = []
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        a = rng.randint(-5, 8)
        b = -a - rng.randint(1, 6)
        arcs += [(u, v, a), (v, u, b)]
    return arcs


class TestRandomTrees:
    def test_agrees_with_naive_walk_oracle(self):
        rng = random.Random(7)
        for _ in range(40):
            n = rng.randint(2, 50)
            tree = make_tree(random_tree_arcs(rng, n), n)
            table = tree_distances(tree)
            for _ in range(60):
                s = rng.choice(tree.vertices)
                t = rng.choice(tree.vertices)
                assert table.d(s, t) == naive_tree_distance(tree, s, t)

    def test_antisymmetric_negativity(self):
        rng = random.Random(8)
        for _ in range(30):
            n = rng.randint(2, 20)
            tree = make_tree(random_tree_arcs(rng, n), n)
            table = tree_distances(tree)
            for s in tree.vertices:
                assert table.d(s, s) == 0
                for t in tree.vertices:
                    if s != t:
                        assert table.d(s, t) + table.d(t, s) < 0

    def test_additivity_along_tree_paths(self):
        rng = random.Random(9)
        for _ in range(20):
            n = rng.randint(3, 12)
            tree = make_tree(random_tree_arcs(rng, n), n)
            table = tree_distances(tree)
            for s in tree.vertices:
                for t in tree.vertices:
                    path = tree.path_vertices(s, t)
                    for mid in path:
                        assert table.d(s, mid) + table.d(mid, t) == table.d(s, t)
