"""Predecessor matrices and explicit shortest-path reconstruction.

Every matrix entry names the last-but-one vertex of one shortest path, with
deterministic tie-breaking inherited from the solver.  A single flat matrix
cannot be walked naively row by row here: shortest simple paths in these
digraphs do not always have shortest prefixes, so one row may need mutually
inconsistent entries.  Extraction therefore descends through the layers the
solver actually used (ordinary-subgraph tables, tree paths, per-subset
argmin records) and then cancels the zero-weight excursions where the legs
overlap, which provably yields a simple path of exactly the reported
weight.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .apsp_core import SubsetDpDetail
from .graph_core import LOOSE, SPECIAL, Arc, InternalError, NegativeTree


class NoPath(Exception):
    """Requested a path for an unreachable pair."""

    def __init__(self, s: int, t: int):
        super().__init__(f"no path from {s} to {t}")
        self.s = s
        self.t = t


@dataclass
class ArcStep:
    """One arc of a reported path.

    Loose arcs are genuine arcs of the augmented digraph; ``mirrors`` then
    names the special arc (head -> tail) whose negated weight defines them,
    so a consumer of the original instance can verify the step.
    """

    tail: int
    head: int
    weight: int
    kind: str
    mirrors: Arc | None = None


@dataclass
class PathResult:
    vertices: list[int]
    arcs: list[ArcStep]
    weight: int


class PredecessorMatrix:
    """Last-but-one vertex per ordered pair; 0 encodes "undefined".

    ``plan`` is the layer-aware extractor used by :func:`extract_path`.
    """

    def __init__(self, n: int, table: np.ndarray, plan=None):
        self.n = n
        self.table = table
        self.plan = plan

    def entry(self, s: int, t: int) -> int | None:
        v = int(self.table[s, t])
        return v if v else None


def simplify_walk(arcs: list[Arc], start: int) -> list[Arc]:
    """Drop zero-weight excursions so the walk becomes a simple path.

    Any repeated vertex closes a sub-walk that reuses no special pair; on a
    nearly conservative unit such a closed walk cannot be negative, and it
    cannot be positive either or the remaining path would beat the optimum.
    """
    verts = [start]
    kept: list[Arc] = []
    pos = {start: 0}
    for a in arcs:
        if a.tail != verts[-1]:
            raise InternalError("reconstructed walk is disconnected")
        kept.append(a)
        verts.append(a.head)
        j = pos.get(a.head)
        if j is not None:
            dropped = kept[j:]
            if sum(x.weight for x in dropped) != 0:
                raise InternalError("cancelled excursion has nonzero weight")
            for x in verts[j + 1 : -1]:
                pos.pop(x, None)
            del kept[j:]
            del verts[j + 1 :]
        else:
            pos[a.head] = len(verts) - 1
    return kept


def _mirror(a: Arc) -> Arc | None:
    if a.kind != LOOSE:
        return None
    return Arc(a.head, a.tail, -a.weight, SPECIAL)


def _finish(arcs: list[Arc], s: int) -> PathResult:
    arcs = simplify_walk(arcs, s)
    vertices = [s] + [a.head for a in arcs]
    steps = [ArcStep(a.tail, a.head, a.weight, a.kind, _mirror(a)) for a in arcs]
    return PathResult(vertices, steps, sum(a.weight for a in arcs))


def extract_path(pm: PredecessorMatrix, s: int, t: int) -> PathResult:
    """One shortest s -> t path: vertex sequence plus annotated arcs.

    Raises NoPath when t is unreachable from s.  The result is a simple
    path whose arc weights sum exactly to the reported distance.
    """
    if not 1 <= s <= pm.n or not 1 <= t <= pm.n:
        raise ValueError(f"vertex pair ({s}, {t}) out of range 1..{pm.n}")
    if s == t:
        return PathResult([s], [], 0)
    if pm.entry(s, t) is None:
        raise NoPath(s, t)
    if pm.plan is None:
        raise InternalError("predecessor matrix has no extraction plan")
    return _finish(pm.plan.walk_arcs(s, t), s)


# ---------------------------------------------------------------------------
# Tree-level predecessors.
# ---------------------------------------------------------------------------


def _tree_walk_arcs(tree: NegativeTree, u: int, v: int) -> list[Arc]:
    path = tree.path_vertices(u, v)
    return [
        Arc(x, y, tree.weight_to[(x, y)], SPECIAL) for x, y in zip(path, path[1:])
    ]


class _TreePlan:
    def __init__(self, tree: NegativeTree):
        self.tree = tree

    def walk_arcs(self, s: int, t: int) -> list[Arc]:
        return _tree_walk_arcs(self.tree, s, t)


def _tree_pred_table(tree: NegativeTree, n: int) -> np.ndarray:
    tbl = np.zeros((n + 1, n + 1), dtype=np.int32)
    for s in tree.vertices:
        q = deque([s])
        seen = {s}
        while q:
            x = q.popleft()
            for y, _ in tree.adj[x]:
                if y not in seen:
                    seen.add(y)
                    tbl[s, y] = x
                    q.append(y)
    return tbl


def predecessors_tree(tree: NegativeTree, n: int | None = None) -> PredecessorMatrix:
    """Predecessors for pairs inside one negative tree.

    The entry for (s, t) is the neighbor of t on the unique tree path
    from s.
    """
    if n is None:
        n = max(tree.vertices)
    return PredecessorMatrix(n, _tree_pred_table(tree, n), _TreePlan(tree))


# ---------------------------------------------------------------------------
# Subset-DP predecessors.
# ---------------------------------------------------------------------------


def predecessors_dp(detail: SubsetDpDetail) -> list[np.ndarray]:
    """Per-subset predecessor tables from the DP's argmin records.

    For each entry the rule follows the winning decomposition: if the plain
    ordinary distance won, copy the ordinary predecessor; otherwise the path
    ends with the tree leg (exit vertex v = t: neighbor of t on the tree
    path from the entry vertex u) or with the remainder leg (v != t:
    predecessor of t on the v -> t path with the winning tree removed).
    """
    if detail.pred_by_mask is not None:
        return detail.pred_by_mask
    k = len(detail.trees)
    n = detail.n
    if detail.tree_preds is None:
        detail.tree_preds = [_tree_pred_table(t, n) for t in detail.trees]
    tree_preds = detail.tree_preds
    preds: list = [None] * (1 << k)
    preds[0] = detail.pred0
    tgrid = np.broadcast_to(np.arange(n + 1)[None, :], (n + 1, n + 1))
    for mask in detail.mask_order[1:]:
        at = detail.at_by_mask[mask]
        au = detail.au_by_mask[mask]
        av = detail.av_by_mask[mask]
        pred = detail.pred0.copy()
        for i in range(k):
            if not mask >> i & 1:
                continue
            won = at == i + 1
            if not won.any():
                continue
            rest = preds[mask ^ (1 << i)]
            tail_leg = won & (av != tgrid)
            if tail_leg.any():
                pred[tail_leg] = rest[av[tail_leg], tgrid[tail_leg]]
            tree_leg = won & (av == tgrid) & (au != av)
            if tree_leg.any():
                pred[tree_leg] = tree_preds[i][au[tree_leg], tgrid[tree_leg]]
            # u = v = t adds nothing on top of the ordinary distance, so it
            # can never win a strict comparison; the default copy covers it.
        preds[mask] = pred
    detail.pred_by_mask = preds
    return preds


class _DpPlan:
    """Recursive extractor over the subset-DP argmin records."""

    def __init__(self, detail: SubsetDpDetail, mask: int | None = None):
        self.detail = detail
        self.mask = detail.full_mask() if mask is None else mask

    def walk_arcs(self, s: int, t: int) -> list[Arc]:
        return self._extract(s, t, self.mask)

    def _extract(self, s: int, t: int, mask: int) -> list[Arc]:
        if s == t:
            return []
        d = self.detail
        tree_id = int(d.at_by_mask[mask][s, t]) if mask else 0
        if tree_id == 0:
            return self._walk_ordinary(s, t)
        i = tree_id - 1
        u = int(d.au_by_mask[mask][s, t])
        v = int(d.av_by_mask[mask][s, t])
        return (
            self._extract(s, u, 0)
            + _tree_walk_arcs(d.trees[i], u, v)
            + self._extract(v, t, mask ^ (1 << i))
        )

    def _walk_ordinary(self, s: int, t: int) -> list[Arc]:
        d = self.detail
        arcs: list[Arc] = []
        cur = t
        for _ in range(d.n):
            if cur == s:
                break
            p = int(d.pred0[s, cur])
            if p == 0:
                raise InternalError(f"missing ordinary predecessor for ({s}, {cur})")
            arcs.append(d.g.arcs[int(d.arcidx0[p, cur])])
            cur = p
        else:
            raise InternalError("ordinary predecessor walk did not terminate")
        arcs.reverse()
        return arcs


def dp_predecessor_matrix(detail: SubsetDpDetail) -> PredecessorMatrix:
    preds = predecessors_dp(detail)
    return PredecessorMatrix(detail.n, preds[detail.full_mask()], _DpPlan(detail))


# ---------------------------------------------------------------------------
# Condensation-level predecessors (cross-component pairs).
# ---------------------------------------------------------------------------


def predecessors_condensed(components, dag, dag_pred: np.ndarray, n: int) -> np.ndarray:
    """Assemble the global predecessor table from per-component tables.

    For s and t in the same component the component entry is copied.  For a
    cross-component pair the condensation's predecessor of t's collector
    vertex names the component vertex x through which t's component was
    entered: if x differs from t the component's own (x, t) entry applies,
    otherwise t was entered directly by a cross arc and its tail is the
    predecessor.

    ``components`` expose ``verts`` (sorted global ids) and ``pred`` (local
    table holding global vertex ids); ``dag`` exposes ``a_id``, ``b_id`` and
    ``vertex_of`` index maps.
    """
    table = np.zeros((n + 1, n + 1), dtype=np.int32)
    loc = np.zeros(n + 1, dtype=np.int64)
    for comp in components:
        gids = np.array(comp.verts)
        table[np.ix_(gids, gids)] = comp.pred[1:, 1:]
    for ks, comp_s in enumerate(components):
        rows = np.array(comp_s.verts)
        a_rows = dag.a_id[rows]
        for kt, comp_t in enumerate(components):
            if kt == ks:
                continue
            cols = np.array(comp_t.verts)
            loc[cols] = np.arange(1, len(cols) + 1)
            p = dag_pred[np.ix_(a_rows, dag.b_id[cols])]
            reachable = p != 0
            if not reachable.any():
                continue
            x = dag.vertex_of[p]  # entry vertex of t's component (0 if none)
            via_comp = comp_t.pred[loc[x], loc[cols][None, :]]
            q = dag_pred[a_rows[:, None], p]
            direct = dag.vertex_of[q]
            vals = np.where(x == cols[None, :], direct, via_comp)
            vals[~reachable] = 0
            table[np.ix_(rows, cols)] = vals
    return table
