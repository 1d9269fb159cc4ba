"""Pairwise distances inside a single negative tree.

Between two vertices of a negative tree there is exactly one path that stays
on the tree's special arcs; its weight is the tree distance.  The full table
for a tree with r vertices is filled top-down from the root in O(r^2).
"""

from __future__ import annotations

import numpy as np

from .graph_core import NegativeTree


class TreeDistanceTable:
    """Square table of tree distances, indexed by tree-local positions."""

    def __init__(self, tree: NegativeTree, dist: np.ndarray):
        self.tree = tree
        self.dist = dist

    def d(self, u: int, v: int) -> int:
        """Distance from u to v along the unique tree path (vertex ids)."""
        return int(self.dist[self.tree.index[u], self.tree.index[v]])


def tree_distances(tree: NegativeTree) -> TreeDistanceTable:
    """Fill the all-pairs table for one negative tree.

    Vertices come in breadth-first order from the root, so when a vertex is
    processed its parent already has a complete row and column; the new row
    and column are one vectorized shift of the parent's.
    """
    r = len(tree.vertices)
    dist = np.zeros((r, r), dtype=np.int64)
    for k in range(1, r):
        v = tree.vertices[k]
        par, w_up, w_down = tree.parent[v]
        p = tree.index[par]
        dist[k, :k] = w_up + dist[p, :k]
        dist[:k, k] = dist[:k, p] + w_down
        dist[k, k] = 0
    return TreeDistanceTable(tree, dist)
