"""Shortest-path engines for one decomposition unit.

All matrices are numpy int64 tables indexed directly by vertex id 1..n (row
and column 0 are unused).  Unreachable pairs hold the sentinel ``INF``;
arithmetic clamps so that sentinel plus anything stays a sentinel and no
int64 overflow can occur.  Weights are exact integers throughout.

The engines: Floyd-Warshall on the ordinary subgraph, the two single-tree
algorithms, the feasibility inequality that decides whether one more
negative tree can be activated, and the subset dynamic program that
activates trees subset by subset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .graph_core import (
    SPECIAL,
    Arc,
    InternalError,
    NegativeTree,
    WeightedDigraph,
)
from .tree_metrics import TreeDistanceTable

if TYPE_CHECKING:  # pragma: no cover
    from .path_recon import PredecessorMatrix

INF = 1 << 61          # unreachable sentinel
_CLAMP = 1 << 60       # values above this are unreachable in disguise
_FLOOR = -(1 << 58)    # cap runaway negatives while probing negative cycles

SOLVED = "solved"
NOT_NEARLY_CONSERVATIVE = "not-nearly-conservative"


class LimitExceeded(Exception):
    """A decomposition unit holds more negative trees than allowed."""

    def __init__(self, count: int, limit: int):
        super().__init__(f"unit has {count} negative trees, limit is {limit}")
        self.count = count
        self.limit = limit


def clamp(a: np.ndarray) -> np.ndarray:
    """Normalize sentinel drift after additions, in place."""
    a[a > _CLAMP] = INF
    np.maximum(a, _FLOOR, out=a)
    return a


def minplus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tropical product: out[i, j] = min_k a[i, k] + b[k, j]."""
    out = (a[:, :, None] + b[None, :, :]).min(axis=1)
    return clamp(out)


def minplus_argmin(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Tropical product plus the first index attaining each minimum."""
    t = a[:, :, None] + b[None, :, :]
    arg = t.argmin(axis=1)
    out = np.take_along_axis(t, arg[:, None, :], axis=1)[:, 0, :]
    return clamp(out), arg


class DistanceMatrix:
    """n x n table of exact distances; +inf marks unreachable pairs."""

    def __init__(self, n: int, values: np.ndarray):
        self.n = n
        self.values = values

    def entry(self, s: int, t: int) -> int | float:
        v = self.values[s, t]
        return math.inf if v > _CLAMP else int(v)

    def finite(self, s: int, t: int) -> bool:
        return self.values[s, t] <= _CLAMP

    def equals(self, other: "DistanceMatrix") -> bool:
        return self.n == other.n and bool(np.array_equal(self.values, other.values))

    def __repr__(self):
        return f"DistanceMatrix(n={self.n})"


# ---------------------------------------------------------------------------
# Witnesses carried by a not-nearly-conservative verdict.
# ---------------------------------------------------------------------------


@dataclass
class NegativeCycleWitness:
    """A directed cycle of ordinary arcs with negative total weight."""

    vertices: tuple[int, ...]
    weight: int
    unit: str | None = None


@dataclass
class FeasibilityWitness:
    """A pair u, v of one tree whose outside distance undercuts the tree.

    The closed walk (u -> v outside the tree) + (v -> u through the tree)
    is special-simple and negative, so no nearly conservative verdict is
    possible: outside + tree_back < 0.
    """

    tree_root: int
    u: int
    v: int
    outside: int
    tree_back: int
    subset: tuple[int, ...] = ()
    unit: str | None = None


@dataclass
class SpanningArcWitness:
    """An ordinary arc u -> v shorter than the tree can pay back (v -> u)."""

    arc: Arc
    tree_back: int
    unit: str | None = None


@dataclass
class ApspOutcome:
    """Result bundle: a verdict plus matrices on success, witness on failure."""

    verdict: str
    distances: DistanceMatrix | None = None
    predecessors: "PredecessorMatrix | None" = None
    witness: object | None = None
    detail: object | None = None

    @property
    def solved(self) -> bool:
        return self.verdict == SOLVED


# ---------------------------------------------------------------------------
# Ordinary subgraph: adjacency matrix and Floyd-Warshall.
# ---------------------------------------------------------------------------


def ordinary_weight_matrix(g: WeightedDigraph) -> tuple[np.ndarray, np.ndarray]:
    """Min-weight adjacency of the ordinary subgraph (originals + loose).

    Returns (weights, arc_index) where arc_index[u, v] points into g.arcs at
    the arc realizing the minimum, -1 where none.  Equal-weight ties keep
    the original arc rather than the loose mirror.
    """
    n = g.n
    w = np.full((n + 1, n + 1), INF, dtype=np.int64)
    idx = np.full((n + 1, n + 1), -1, dtype=np.int32)
    for j, a in enumerate(g.arcs):
        if a.kind == SPECIAL:
            continue
        if a.weight < w[a.tail, a.head]:
            w[a.tail, a.head] = a.weight
            idx[a.tail, a.head] = j
    return w, idx


@dataclass
class OrdinaryApsp:
    """Floyd-Warshall output: distances plus a walkable predecessor table."""

    distances: DistanceMatrix
    pred: np.ndarray
    arc_index: np.ndarray


def floyd_warshall(g: WeightedDigraph) -> OrdinaryApsp | NegativeCycleWitness:
    """All-pairs distances of the ordinary subgraph of g.

    Returns a NegativeCycleWitness iff the ordinary subgraph has a negative
    cycle, in which case the whole instance is not nearly conservative.
    """
    n = g.n
    d, arcidx = ordinary_weight_matrix(g)
    ids = np.arange(1, n + 1)
    d[ids, ids] = 0
    finite = d < _CLAMP
    np.fill_diagonal(finite, False)
    pred = np.where(finite, np.arange(n + 1)[:, None], 0).astype(np.int32)
    for k in range(1, n + 1):
        alt = d[:, k : k + 1] + d[k : k + 1, :]
        clamp(alt)
        better = alt < d
        if better.any():
            d[better] = alt[better]
            pred[better] = np.broadcast_to(pred[k, :], pred.shape)[better]
    if (np.diagonal(d)[1:] < 0).any():
        return find_negative_cycle(g)
    return OrdinaryApsp(DistanceMatrix(n, d), pred, arcidx)


def find_negative_cycle(g: WeightedDigraph) -> NegativeCycleWitness:
    """Recover one negative cycle of the ordinary subgraph (Bellman-Ford)."""
    n = g.n
    dist = [0] * (n + 1)
    via: list[Arc | None] = [None] * (n + 1)
    arcs = g.ordinary_arcs()
    touched = None
    for _ in range(n):
        touched = None
        for a in arcs:
            cand = dist[a.tail] + a.weight
            if cand < dist[a.head]:
                dist[a.head] = cand
                via[a.head] = a
                touched = a.head
        if touched is None:
            break
    if touched is None:
        raise InternalError("negative cycle reported but none found")
    v = touched
    for _ in range(n):
        v = via[v].tail
    cycle_arcs = []
    u = v
    while True:
        a = via[u]
        cycle_arcs.append(a)
        u = a.tail
        if u == v:
            break
    cycle_arcs.reverse()
    vertices = [a.tail for a in cycle_arcs]
    weight = sum(a.weight for a in cycle_arcs)
    if weight >= 0:
        raise InternalError("extracted cycle is not negative")
    k = vertices.index(min(vertices))
    vertices = vertices[k:] + vertices[:k]
    return NegativeCycleWitness(tuple(vertices), weight)


# ---------------------------------------------------------------------------
# Single-tree machinery.
# ---------------------------------------------------------------------------


def _feasibility_violation(
    outer: np.ndarray, tree: NegativeTree, table: TreeDistanceTable
) -> tuple[int, int, int, int] | None:
    """First (by vertex ids) pair u, v with outer(u, v) + tree(v, u) < 0."""
    ids = sorted(tree.vertices)
    perm = [tree.index[v] for v in ids]
    sub = outer[np.ix_(ids, ids)]
    back = table.dist[np.ix_(perm, perm)].T  # back[ui, vi] = tree dist v -> u
    bad = np.argwhere(sub + back < 0)
    if len(bad) == 0:
        return None
    ui, vi = bad[0]
    return ids[ui], ids[vi], int(sub[ui, vi]), int(back[ui, vi])


def feasibility_test(
    outer: DistanceMatrix, tree: NegativeTree, table: TreeDistanceTable
) -> tuple[int, int] | None:
    """Check d_outer(u, v) >= -(tree distance v -> u) for all tree pairs.

    ``outer`` must be the distance table of a digraph that does not use this
    tree's special arcs and is already known nearly conservative.  Returns
    None when every pair passes (unreachable pairs always pass), otherwise
    the first violating pair (u, v).
    """
    hit = _feasibility_violation(outer.values, tree, table)
    return None if hit is None else (hit[0], hit[1])


def check_spanning_tree_case(
    g: WeightedDigraph, tree: NegativeTree, table: TreeDistanceTable
) -> ApspOutcome:
    """Solve the unit when a single negative tree spans every vertex.

    Nearly conservative iff every ordinary arc u -> v has weight at least
    -(tree distance v -> u); then all distances equal the tree distances.
    """
    if len(tree.vertices) != g.n:
        raise InternalError("spanning-tree check called on a non-spanning tree")
    for a in g.ordinary_arcs():
        back = table.d(a.head, a.tail)
        if a.weight + back < 0:
            return ApspOutcome(
                NOT_NEARLY_CONSERVATIVE,
                witness=SpanningArcWitness(arc=a, tree_back=back),
            )
    n = g.n
    vals = np.full((n + 1, n + 1), INF, dtype=np.int64)
    ids = np.array(tree.vertices)
    vals[np.ix_(ids, ids)] = table.dist
    from . import path_recon

    pm = path_recon.predecessors_tree(tree, n)
    return ApspOutcome(SOLVED, DistanceMatrix(n, vals), pm, None, None)


def single_tree_apsp(
    d_prime: DistanceMatrix, tree: NegativeTree, table: TreeDistanceTable
) -> DistanceMatrix:
    """Distances once one tree is activated on top of the ordinary table.

    d(s, t) = min(d'(s, t), min over tree pairs u, v of
    d'(s, u) + tree(u, v) + d'(v, t)).  Requires a passed feasibility test.
    """
    d0 = d_prime.values
    ids = np.array(tree.vertices)
    through = minplus(table.dist, d0[ids, :])
    through = minplus(d0[:, ids], through)
    out = clamp(np.minimum(d0, through))
    if (np.diagonal(out)[1 : d_prime.n + 1] != 0).any():
        raise InternalError("single-tree distances broke the zero diagonal")
    return DistanceMatrix(d_prime.n, out)


# ---------------------------------------------------------------------------
# Subset dynamic program over negative trees.
# ---------------------------------------------------------------------------


@dataclass
class SubsetDpDetail:
    """Everything the subset DP produced, kept for path reconstruction.

    ``dist_by_mask[m]`` is the distance table of the unit with exactly the
    trees in bitmask m activated.  ``at/au/av`` record, per entry, which
    tree and which entry/exit pair realized the minimum (tree index + 1 in
    ``at``; 0 means the plain ordinary distance won).
    """

    g: WeightedDigraph
    trees: list[NegativeTree]
    tables: list[TreeDistanceTable]
    n: int
    dist_by_mask: list
    pred0: np.ndarray
    arcidx0: np.ndarray
    at_by_mask: list | None = None
    au_by_mask: list | None = None
    av_by_mask: list | None = None
    pred_by_mask: list | None = None
    tree_preds: list | None = None
    mask_order: list[int] = field(default_factory=list)

    def full_mask(self) -> int:
        return (1 << len(self.trees)) - 1


def _mask_order(k: int) -> list[int]:
    return sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m))


def subset_dp(
    g: WeightedDigraph,
    trees: list[NegativeTree],
    tables: list[TreeDistanceTable],
    *,
    max_trees: int = 24,
    want_paths: bool = True,
    pivot_rule: str = "smallest",
) -> ApspOutcome:
    """Solve one unit by activating negative trees subset by subset.

    Subsets are processed by ascending cardinality then ascending bitmask.
    Each nonempty subset is first vetted by the feasibility test against the
    subset without its pivot tree; the first failure decides the verdict.
    Ties prefer the plain ordinary distance, then the smaller tree index,
    then the lexicographically smallest entry/exit pair, which pins the
    predecessor matrices.
    """
    k = len(trees)
    if k > max_trees:
        raise LimitExceeded(k, max_trees)
    fw = floyd_warshall(g)
    if isinstance(fw, NegativeCycleWitness):
        return ApspOutcome(NOT_NEARLY_CONSERVATIVE, witness=fw)
    n = g.n
    base = fw.distances.values
    size = 1 << k
    dist_by_mask: list = [None] * size
    dist_by_mask[0] = base
    order = _mask_order(k)
    at_by_mask = [None] * size if want_paths else None
    au_by_mask = [None] * size if want_paths else None
    av_by_mask = [None] * size if want_paths else None

    ids_sorted = [np.array(sorted(t.vertices)) for t in trees]
    tbl_sorted = []
    for t, tab in zip(trees, tables):
        perm = [t.index[v] for v in sorted(t.vertices)]
        tbl_sorted.append(tab.dist[np.ix_(perm, perm)])

    col_grid = np.arange(n + 1)[None, :]
    for mask in order[1:]:
        if pivot_rule == "largest":
            pivot = mask.bit_length() - 1
        else:
            pivot = (mask & -mask).bit_length() - 1
        prev = dist_by_mask[mask ^ (1 << pivot)]
        hit = _feasibility_violation(prev, trees[pivot], tables[pivot])
        if hit is not None:
            u, v, outside, back = hit
            members = tuple(i for i in range(k) if mask >> i & 1)
            witness = FeasibilityWitness(
                tree_root=trees[pivot].root,
                u=u,
                v=v,
                outside=outside,
                tree_back=back,
                subset=members,
            )
            return ApspOutcome(NOT_NEARLY_CONSERVATIVE, witness=witness)
        cur = base.copy()
        if want_paths:
            at = np.zeros((n + 1, n + 1), dtype=np.int16)
            au = np.zeros((n + 1, n + 1), dtype=np.int32)
            av = np.zeros((n + 1, n + 1), dtype=np.int32)
        for i in range(k):
            if not mask >> i & 1:
                continue
            rest = dist_by_mask[mask ^ (1 << i)]
            ids = ids_sorted[i]
            if want_paths:
                thru, argv = minplus_argmin(tbl_sorted[i], rest[ids, :])
                full, argu = minplus_argmin(base[:, ids], thru)
            else:
                thru = minplus(tbl_sorted[i], rest[ids, :])
                full = minplus(base[:, ids], thru)
            better = full < cur
            if not better.any():
                continue
            cur[better] = full[better]
            if want_paths:
                at[better] = i + 1
                au[better] = ids[argu[better]]
                vpos = argv[argu, col_grid]
                av[better] = ids[vpos[better]]
        if (np.diagonal(cur)[1 : n + 1] != 0).any():
            raise InternalError("subset distances broke the zero diagonal")
        dist_by_mask[mask] = cur
        if want_paths:
            at_by_mask[mask] = at
            au_by_mask[mask] = au
            av_by_mask[mask] = av

    detail = SubsetDpDetail(
        g=g,
        trees=trees,
        tables=tables,
        n=n,
        dist_by_mask=dist_by_mask,
        pred0=fw.pred,
        arcidx0=fw.arc_index,
        at_by_mask=at_by_mask,
        au_by_mask=au_by_mask,
        av_by_mask=av_by_mask,
        mask_order=order,
    )
    dm = DistanceMatrix(n, dist_by_mask[size - 1])
    pm = None
    if want_paths:
        from . import path_recon

        pm = path_recon.dp_predecessor_matrix(detail)
    return ApspOutcome(SOLVED, dm, pm, None, detail)
