"""Ground truth by exhaustive enumeration, for desk-scale verification.

The underlying problems are NP-hard, so the reference answers come from
brute force: enumerate every simple cycle to decide the verdict, enumerate
every simple path to get distances.  Hard size guards keep these honest
about their exponential cost.  The solver is certified against these
oracles on thousands of small random instances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .apsp_core import INF
from .graph_core import LOOSE, SPECIAL, WeightedDigraph

CYCLE_VERTEX_LIMIT = 12
PATH_VERTEX_LIMIT = 10
WALK_SPECIAL_LIMIT = 12


class SizeGuard(Exception):
    """The instance is too large for exhaustive enumeration."""


@dataclass
class OracleVerdict:
    nearly_conservative: bool
    worst_cycle: tuple[tuple[int, ...], int] | None = None
    distances: np.ndarray | None = None


def _original_adjacency(g: WeightedDigraph) -> list[list[tuple[int, int]]]:
    # Added loose arcs are excluded: the oracle answers for the instance as
    # given.  (Loose arcs are dominated and never change any answer.)
    out: list[list[tuple[int, int]]] = [[] for _ in range(g.n + 1)]
    for a in g.arcs:
        if a.kind != LOOSE:
            out[a.tail].append((a.head, a.weight))
    for lst in out:
        lst.sort()
    return out


def enumerate_cycles_verdict(g: WeightedDigraph) -> OracleVerdict:
    """Check every simple directed cycle; negative ones must have two arcs.

    Each cycle is enumerated once, rooted at its smallest vertex.
    """
    n = g.n
    if n > CYCLE_VERTEX_LIMIT:
        raise SizeGuard(f"cycle enumeration is capped at {CYCLE_VERTEX_LIMIT} vertices")
    out = _original_adjacency(g)
    worst: tuple[int, tuple[int, ...]] | None = None

    def dfs(s: int, v: int, length: int, path: list[int], onpath: set[int]):
        nonlocal worst
        for w, wt in out[v]:
            if w == s:
                if len(path) >= 3:
                    total = length + wt
                    if worst is None or total < worst[0]:
                        worst = (total, tuple(path))
            elif w > s and w not in onpath:
                path.append(w)
                onpath.add(w)
                dfs(s, w, length + wt, path, onpath)
                path.pop()
                onpath.remove(w)

    for s in range(1, n + 1):
        dfs(s, s, 0, [s], {s})
    if worst is not None and worst[0] < 0:
        return OracleVerdict(False, worst_cycle=(worst[1], worst[0]))
    return OracleVerdict(True)


def enumerate_paths_distances(g: WeightedDigraph) -> np.ndarray:
    """Exact distances as the minimum over every enumerated simple path."""
    n = g.n
    if n > PATH_VERTEX_LIMIT:
        raise SizeGuard(f"path enumeration is capped at {PATH_VERTEX_LIMIT} vertices")
    out = _original_adjacency(g)
    best = np.full((n + 1, n + 1), INF, dtype=np.int64)
    for v in range(1, n + 1):
        best[v, v] = 0

    def dfs(s: int, v: int, length: int, onpath: set[int]):
        for w, wt in out[v]:
            if w in onpath:
                continue
            nl = length + wt
            if nl < best[s, w]:
                best[s, w] = nl
            onpath.add(w)
            dfs(s, w, nl, onpath)
            onpath.remove(w)

    for s in range(1, n + 1):
        dfs(s, s, 0, {s})
    return best


def full_oracle(g: WeightedDigraph) -> OracleVerdict:
    """Verdict plus, when nearly conservative and small enough, distances."""
    verdict = enumerate_cycles_verdict(g)
    if verdict.nearly_conservative and g.n <= PATH_VERTEX_LIMIT:
        verdict.distances = enumerate_paths_distances(g)
    return verdict


def validate_special_simple(walk_arcs, g: WeightedDigraph) -> bool:
    """True iff no special arc repeats and no special pair is used both ways."""
    used: set[tuple[int, int]] = set()
    for a in walk_arcs:
        if a not in g.arcs_between(a.tail, a.head):
            raise ValueError(f"walk arc {a!r} is not an arc of the digraph")
        if a.kind == SPECIAL:
            if a.pair in used or (a.head, a.tail) in used:
                return False
            used.add(a.pair)
    return True


def min_special_simple_closed_walk(g: WeightedDigraph, max_arcs: int | None = None):
    """Minimum weight over special-simple closed walks of 1..max_arcs arcs.

    Layered search over (vertex, set of used special arcs) states; the state
    count is what forces the special-arc guard.  Returns None when no closed
    walk exists at all.  A walk capped at twice the vertex count suffices to
    expose a negative one whenever the verdict is bad, because a minimal
    negative special-simple closed walk is a cycle.
    """
    n = g.n
    specials = g.special_arcs()
    if len(specials) > WALK_SPECIAL_LIMIT or n > 8:
        raise SizeGuard("special-simple walk search is for tiny instances only")
    if max_arcs is None:
        max_arcs = 2 * n
    sid = {a.pair: i for i, a in enumerate(specials)}
    best = None
    for s in range(1, n + 1):
        frontier = {(s, 0): 0}
        for _ in range(max_arcs):
            nxt: dict[tuple[int, int], int] = {}
            for (v, mask), ln in frontier.items():
                for a in g.out_arcs(v):
                    m2 = mask
                    if a.kind == SPECIAL:
                        i = sid[a.pair]
                        j = sid.get((a.head, a.tail))
                        if mask >> i & 1 or (j is not None and mask >> j & 1):
                            continue
                        m2 = mask | 1 << i
                    key = (a.head, m2)
                    nl = ln + a.weight
                    if key not in nxt or nl < nxt[key]:
                        nxt[key] = nl
            frontier = nxt
            for (v, _), ln in frontier.items():
                if v == s and (best is None or ln < best):
                    best = ln
    return best


# ---------------------------------------------------------------------------
# Mixed-graph semantics: arcs one-way, undirected edges both ways, at most
# one use per connector on a route.  Vertex-simple routes make the latter
# automatic except on two-vertex cycles.
# ---------------------------------------------------------------------------


def _mixed_adjacency(n: int, arcs, edges) -> list[list[tuple[int, int]]]:
    best: dict[tuple[int, int], int] = {}
    for u, v, w in arcs:
        if u != v and (w < best.get((u, v), w + 1)):
            best[(u, v)] = w
    for u, v, w in edges:
        if u == v:
            continue
        for key in ((u, v), (v, u)):
            if w < best.get(key, w + 1):
                best[key] = w
    out: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for (u, v), w in sorted(best.items()):
        out[u].append((v, w))
    return out


def enumerate_mixed_paths(n: int, arcs, edges) -> np.ndarray:
    """Simple-route distances under mixed-graph semantics."""
    if n > PATH_VERTEX_LIMIT:
        raise SizeGuard(f"path enumeration is capped at {PATH_VERTEX_LIMIT} vertices")
    out = _mixed_adjacency(n, arcs, edges)
    best = np.full((n + 1, n + 1), INF, dtype=np.int64)
    for v in range(1, n + 1):
        best[v, v] = 0

    def dfs(s: int, v: int, length: int, onpath: set[int]):
        for w, wt in out[v]:
            if w in onpath:
                continue
            nl = length + wt
            if nl < best[s, w]:
                best[s, w] = nl
            onpath.add(w)
            dfs(s, w, nl, onpath)
            onpath.remove(w)

    for s in range(1, n + 1):
        dfs(s, s, 0, {s})
    return best


def mixed_cycles_ok(n: int, arcs, edges) -> bool:
    """True iff every simple mixed cycle on three or more vertices is
    nonnegative.  Two-vertex round trips are exempt, mirroring the two-arc
    exemption on the directed side."""
    if n > CYCLE_VERTEX_LIMIT:
        raise SizeGuard(f"cycle enumeration is capped at {CYCLE_VERTEX_LIMIT} vertices")
    out = _mixed_adjacency(n, arcs, edges)

    def dfs(s: int, v: int, length: int, path: list[int], onpath: set[int]) -> bool:
        for w, wt in out[v]:
            if w == s and len(path) >= 3 and length + wt < 0:
                return False
            if w > s and w not in onpath:
                path.append(w)
                onpath.add(w)
                if not dfs(s, w, length + wt, path, onpath):
                    return False
                path.pop()
                onpath.remove(w)
        return True

    return all(dfs(s, s, 0, [s], {s}) for s in range(1, n + 1))
