"""Pipeline: strongly connected components, weak blocks, condensation.

A nearly conservative instance is solved block by block: negative trees
never straddle strongly connected components, simple paths between two
vertices of one component never leave it, and inside a component they cross
weak blocks only through the cut vertices on the unique block-tree path.
Cross-component pairs are answered on an acyclic condensation that carries
the per-component distances on collector arcs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import path_recon
from .apsp_core import (
    _CLAMP,
    INF,
    NOT_NEARLY_CONSERVATIVE,
    SOLVED,
    ApspOutcome,
    DistanceMatrix,
    FeasibilityWitness,
    NegativeCycleWitness,
    SpanningArcWitness,
    subset_dp,
)
from .graph_core import (
    ForestCycle,
    InducedSubgraph,
    InternalError,
    WeightedDigraph,
    build_negative_forest,
    induced_subgraph,
)
from .tree_metrics import tree_distances


# ---------------------------------------------------------------------------
# Strongly connected components (iterative Tarjan).
# ---------------------------------------------------------------------------


@dataclass
class SccDecomposition:
    component_of: dict[int, int]
    components: list[list[int]]  # sinks first: arcs leave a component only
    # toward earlier entries (reverse topological order)


def strongly_connected_components(g: WeightedDigraph) -> SccDecomposition:
    n = g.n
    adj = {v: sorted({a.head for a in g.out_arcs(v)}) for v in range(1, n + 1)}
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    onstack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(1, n + 1):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, ptr = work.pop()
            if ptr == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack.add(v)
            recurse = False
            children = adj[v]
            while ptr < len(children):
                w = children[ptr]
                ptr += 1
                if w not in index:
                    work.append((v, ptr))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in onstack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    component_of = {v: i for i, comp in enumerate(comps) for v in comp}
    return SccDecomposition(component_of, comps)


# ---------------------------------------------------------------------------
# Weak blocks: biconnected blocks of the underlying undirected graph.
# ---------------------------------------------------------------------------


@dataclass
class BlockCutTree:
    blocks: list[tuple[int, ...]]     # vertex sets, each sorted
    cut_vertices: frozenset[int]
    blocks_of: dict[int, list[int]]   # vertex -> indices of blocks holding it


def weak_blocks(g: WeightedDigraph) -> BlockCutTree:
    """Biconnected blocks of the underlying undirected graph, by DFS."""
    n = g.n
    und: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    seen_edges = set()
    for a in g.arcs:
        e = (min(a.tail, a.head), max(a.tail, a.head))
        if e not in seen_edges:
            seen_edges.add(e)
            und[e[0]].append(e[1])
            und[e[1]].append(e[0])
    for v in und:
        und[v].sort()

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int] = {}
    time = 0
    estack: list[tuple[int, int]] = []
    blocks: list[tuple[int, ...]] = []
    for root in range(1, n + 1):
        if root in disc:
            continue
        if not und[root]:
            blocks.append((root,))
            continue
        parent[root] = 0
        disc[root] = low[root] = time
        time += 1
        stack = [(root, iter(und[root]))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    parent[w] = v
                    estack.append((v, w))
                    disc[w] = low[w] = time
                    time += 1
                    stack.append((w, iter(und[w])))
                    advanced = True
                    break
                if w != parent[v] and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                members: set[int] = set()
                while True:
                    e = estack.pop()
                    members.update(e)
                    if e == (u, v):
                        break
                blocks.append(tuple(sorted(members)))
        if estack:
            raise InternalError("block edge stack not drained")

    blocks_of: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for i, blk in enumerate(blocks):
        for v in blk:
            blocks_of[v].append(i)
    cut = frozenset(v for v, bs in blocks_of.items() if len(bs) >= 2)
    return BlockCutTree(blocks, cut, blocks_of)


# ---------------------------------------------------------------------------
# Per-block solve and the in-component composition.
# ---------------------------------------------------------------------------


def solve_block(
    g_block: WeightedDigraph, *, max_trees: int = 24, want_paths: bool = True
) -> ApspOutcome:
    """Solve one weak block with the subset DP over its own negative trees."""
    forest = build_negative_forest(g_block)
    if isinstance(forest, ForestCycle):
        raise InternalError("special pairs of a block are not a forest")
    trees = list(forest.trees)
    tables = [tree_distances(t) for t in trees]
    return subset_dp(
        g_block, trees, tables, max_trees=max_trees, want_paths=want_paths
    )


@dataclass
class BlockState:
    sub: InducedSubgraph
    outcome: ApspOutcome

    def dist_g(self, u: int, v: int) -> int:
        lu, lv = self.sub.local_of[u], self.sub.local_of[v]
        val = int(self.outcome.distances.values[lu, lv])
        if val > _CLAMP:
            raise InternalError("block pair unreachable inside its component")
        return val

    def pred_g(self, u: int, v: int) -> int:
        lu, lv = self.sub.local_of[u], self.sub.local_of[v]
        return self.sub.to_global[int(self.outcome.predecessors.table[lu, lv])]

    def walk_arcs_g(self, u: int, v: int):
        lu, lv = self.sub.local_of[u], self.sub.local_of[v]
        return [
            self.sub.globalize(a)
            for a in self.outcome.predecessors.plan.walk_arcs(lu, lv)
        ]


class ComponentSolution:
    """Distances and predecessors of one strongly connected component.

    Matrices use component-local indices (sorted global order); predecessor
    values are global vertex ids.  ``anchor_*`` record, per pair, the last
    block on the block-tree path and the cut vertex through which it was
    entered, which is all extraction needs.
    """

    def __init__(self, comp_id, verts, dist, pred, blocks, anchor_block, anchor_vertex):
        self.comp_id = comp_id
        self.verts = verts
        self.local_of = {v: i for i, v in enumerate(verts, start=1)}
        self.dist = dist
        self.pred = pred
        self.blocks = blocks
        self.anchor_block = anchor_block
        self.anchor_vertex = anchor_vertex

    def dist_g(self, u: int, v: int) -> int:
        return int(self.dist[self.local_of[u], self.local_of[v]])

    def extract_arcs(self, s: int, t: int) -> list:
        ls = self.local_of[s]
        segments = []
        while t != s:
            lt = self.local_of[t]
            b = int(self.anchor_block[ls, lt]) - 1
            a = int(self.anchor_vertex[ls, lt])
            segments.append(self.blocks[b].walk_arcs_g(a, t))
            t = a
        arcs: list = []
        for seg in reversed(segments):
            arcs += seg
        return arcs


def compose_blocks(
    bct: BlockCutTree,
    blocks: list[BlockState],
    verts: list[int],
    comp_id: int = 0,
    want_paths: bool = True,
) -> ComponentSolution:
    """Stitch per-block tables into whole-component distances.

    A simple path between two component vertices crosses blocks only at the
    cut vertices on the unique block-tree path, so distances add up block
    by block; the table is filled by one block-tree traversal per source.
    """
    r = len(verts)
    local_of = {v: i for i, v in enumerate(verts, start=1)}
    dist = np.full((r + 1, r + 1), INF, dtype=np.int64)
    pred = np.zeros((r + 1, r + 1), dtype=np.int32)
    anchor_block = np.zeros((r + 1, r + 1), dtype=np.int32)
    anchor_vertex = np.zeros((r + 1, r + 1), dtype=np.int32)
    for ls, s in enumerate(verts, start=1):
        dist[ls, ls] = 0
        visited = set(bct.blocks_of[s])
        queue = deque((b, s) for b in sorted(bct.blocks_of[s]))
        while queue:
            b, a = queue.popleft()
            st = blocks[b]
            base = int(dist[ls, local_of[a]])
            for v in bct.blocks[b]:
                if v == a:
                    continue
                lv = local_of[v]
                dist[ls, lv] = base + st.dist_g(a, v)
                if want_paths:
                    anchor_block[ls, lv] = b + 1
                    anchor_vertex[ls, lv] = a
                    pred[ls, lv] = st.pred_g(a, v)
                if v in bct.cut_vertices:
                    for nb in bct.blocks_of[v]:
                        if nb not in visited:
                            visited.add(nb)
                            queue.append((nb, v))
        if (dist[ls, 1:] > _CLAMP).any():
            raise InternalError("component vertex unreachable from a peer")
    return ComponentSolution(
        comp_id, list(verts), dist, pred, blocks, anchor_block, anchor_vertex
    )


# ---------------------------------------------------------------------------
# Condensation and its all-pairs distances.
# ---------------------------------------------------------------------------


class CondensedDag:
    """Acyclic stand-in for the component structure.

    Each component vertex x gets an entry copy a(x) and an exit copy b(x);
    a(x) -> b(y) carries the component-internal distance, and each original
    cross arc u -> v becomes b(u) -> a(v).  Ids ascend along topological
    order, which doubles as the acyclicity certificate.
    """

    def __init__(self, n: int):
        self.n_star = 2 * n
        self.a_id = np.zeros(n + 1, dtype=np.int64)
        self.b_id = np.zeros(n + 1, dtype=np.int64)
        self.vertex_of = np.zeros(self.n_star + 1, dtype=np.int64)
        self.side_of = [""] * (self.n_star + 1)
        self.comp_of_star = [0] * (self.n_star + 1)
        self.out: list[list[tuple[int, int]]] = [[] for _ in range(self.n_star + 1)]


def build_condensed_dag(
    scc: SccDecomposition, comps: list[ComponentSolution], g: WeightedDigraph
) -> CondensedDag:
    n = g.n
    dag = CondensedDag(n)
    nxt = 1
    for k in reversed(range(len(comps))):  # forward topological order
        verts = comps[k].verts
        for v in verts:
            dag.a_id[v] = nxt
            dag.vertex_of[nxt] = v
            dag.side_of[nxt] = "a"
            dag.comp_of_star[nxt] = k
            nxt += 1
        for v in verts:
            dag.b_id[v] = nxt
            dag.vertex_of[nxt] = v
            dag.side_of[nxt] = "b"
            dag.comp_of_star[nxt] = k
            nxt += 1
        sol = comps[k]
        for i, u in enumerate(verts, start=1):
            au = int(dag.a_id[u])
            for j, v in enumerate(verts, start=1):
                dag.out[au].append((int(dag.b_id[v]), int(sol.dist[i, j])))
    for a in g.arcs:
        ku = scc.component_of[a.tail]
        kv = scc.component_of[a.head]
        if ku == kv:
            continue
        if a.kind != "ordinary":
            raise InternalError("non-ordinary arc crosses components")
        dag.out[int(dag.b_id[a.tail])].append((int(dag.a_id[a.head]), a.weight))
    for u in range(1, dag.n_star + 1):
        for w, _ in dag.out[u]:
            if w <= u:
                raise InternalError("condensation is not acyclic")
    return dag


@dataclass
class DagApsp:
    distances: DistanceMatrix
    pred: np.ndarray


def dag_apsp(dag: CondensedDag) -> DagApsp:
    """All-pairs distances on the condensation by topological relaxation."""
    size = dag.n_star
    dist = np.full((size + 1, size + 1), INF, dtype=np.int64)
    pred = np.zeros((size + 1, size + 1), dtype=np.int32)
    for src in range(1, size + 1):
        row = dist[src]
        prow = pred[src]
        row[src] = 0
        for v in range(src, size + 1):
            dv = row[v]
            if dv > _CLAMP:
                continue
            for w, wt in dag.out[v]:
                nd = dv + wt
                if nd < row[w]:
                    row[w] = nd
                    prow[w] = v
    return DagApsp(DistanceMatrix(size, dist), pred)


# ---------------------------------------------------------------------------
# Whole-instance solve.
# ---------------------------------------------------------------------------


def _globalize_witness(witness, sub: InducedSubgraph, unit: str):
    tg = sub.to_global
    if isinstance(witness, NegativeCycleWitness):
        return NegativeCycleWitness(
            tuple(tg[v] for v in witness.vertices), witness.weight, unit
        )
    if isinstance(witness, FeasibilityWitness):
        return FeasibilityWitness(
            tree_root=tg[witness.tree_root],
            u=tg[witness.u],
            v=tg[witness.v],
            outside=witness.outside,
            tree_back=witness.tree_back,
            subset=witness.subset,
            unit=unit,
        )
    if isinstance(witness, SpanningArcWitness):
        return SpanningArcWitness(sub.globalize(witness.arc), witness.tree_back, unit)
    return witness


class _GlobalPlan:
    def __init__(self, comps, component_of, dag, dag_state, g):
        self.comps = comps
        self.component_of = component_of
        self.dag = dag
        self.dag_state = dag_state
        self.g = g

    def walk_arcs(self, s: int, t: int) -> list:
        ks = self.component_of[s]
        kt = self.component_of[t]
        if ks == kt:
            return self.comps[ks].extract_arcs(s, t)
        dag = self.dag
        a = int(dag.a_id[s])
        b = int(dag.b_id[t])
        chain = [b]
        cur = b
        while cur != a:
            p = int(self.dag_state.pred[a, cur])
            if p == 0:
                raise InternalError(f"condensation walk broke at ({s}, {t})")
            chain.append(p)
            cur = p
        chain.reverse()
        arcs: list = []
        for x, y in zip(chain, chain[1:]):
            if dag.side_of[x] == "a":
                k = dag.comp_of_star[x]
                arcs += self.comps[k].extract_arcs(
                    int(dag.vertex_of[x]), int(dag.vertex_of[y])
                )
            else:
                arc = self.g.original_arc(int(dag.vertex_of[x]), int(dag.vertex_of[y]))
                if arc is None:
                    raise InternalError("cross arc vanished")
                arcs.append(arc)
        return arcs


@dataclass
class GlobalDetail:
    scc: SccDecomposition
    comps: list[ComponentSolution]
    dag: CondensedDag
    dag_state: DagApsp


def solve(
    g: WeightedDigraph, *, max_trees: int = 24, want_paths: bool = True
) -> ApspOutcome:
    """Decide near-conservativeness and compute all-pairs shortest paths.

    ``g`` must be normalized, classified and augmented.  The verdict is
    not-nearly-conservative exactly when the special pairs contain a cycle
    or some weak block fails its own check; the witness then names the
    offending unit.
    """
    forest = build_negative_forest(g)
    if isinstance(forest, ForestCycle):
        return ApspOutcome(NOT_NEARLY_CONSERVATIVE, witness=forest)
    scc = strongly_connected_components(g)
    comps: list[ComponentSolution] = []
    for ci, comp_verts in enumerate(scc.components):
        csub = induced_subgraph(g, comp_verts)
        bct_local = weak_blocks(csub.graph)
        blocks: list[BlockState] = []
        for bi, blk in enumerate(bct_local.blocks):
            bverts = [csub.to_global[v] for v in blk]
            bsub = induced_subgraph(g, bverts)
            out = solve_block(bsub.graph, max_trees=max_trees, want_paths=want_paths)
            if not out.solved:
                label = f"component {ci} block {bi}"
                return ApspOutcome(
                    NOT_NEARLY_CONSERVATIVE,
                    witness=_globalize_witness(out.witness, bsub, label),
                )
            blocks.append(BlockState(bsub, out))
        bct = BlockCutTree(
            blocks=[tuple(csub.to_global[v] for v in blk) for blk in bct_local.blocks],
            cut_vertices=frozenset(csub.to_global[v] for v in bct_local.cut_vertices),
            blocks_of={
                csub.to_global[v]: bs for v, bs in bct_local.blocks_of.items()
            },
        )
        comps.append(compose_blocks(bct, blocks, comp_verts, ci, want_paths))
    dag = build_condensed_dag(scc, comps, g)
    state = dag_apsp(dag)

    n = g.n
    vals = np.full((n + 1, n + 1), INF, dtype=np.int64)
    ids = np.arange(1, n + 1)
    vals[ids, ids] = 0
    for comp in comps:
        gids = np.array(comp.verts)
        vals[np.ix_(gids, gids)] = comp.dist[1:, 1:]
    for ks, comp_s in enumerate(comps):
        rows = np.array(comp_s.verts)
        for kt, comp_t in enumerate(comps):
            if ks == kt:
                continue
            cols = np.array(comp_t.verts)
            vals[np.ix_(rows, cols)] = state.distances.values[
                np.ix_(dag.a_id[rows], dag.b_id[cols])
            ]

    pm = None
    if want_paths:
        table = path_recon.predecessors_condensed(comps, dag, state.pred, n)
        plan = _GlobalPlan(comps, scc.component_of, dag, state, g)
        pm = path_recon.PredecessorMatrix(n, table, plan)
    detail = GlobalDetail(scc, comps, dag, state)
    return ApspOutcome(SOLVED, DistanceMatrix(n, vals), pm, None, detail)
