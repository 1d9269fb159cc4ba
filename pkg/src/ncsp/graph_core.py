"""Digraph model with exact integer weights and negative-pair structure.

The solver targets digraphs whose only negative directed cycles are two-arc
cycles: a pair of opposite arcs uv, vu with c(uv) + c(vu) < 0.  Such a pair
is called *special*; every other arc is *ordinary*.  This module normalizes
raw arc lists, classifies arcs, adds the mirror ("loose") arcs that keep
reachability unchanged inside the ordinary subgraph, and extracts the forest
of *negative trees* spanned by the special pairs.  If the special pairs do
not form a forest the instance is already known to be non-conservative in a
strong sense, and a witness cycle is returned instead.
"""

from __future__ import annotations

from collections import deque

WEIGHT_LIMIT = 1 << 40   # |weight| bound; keeps every path sum well inside int64
VERTEX_LIMIT = 20000

SPECIAL = "special"
ORDINARY = "ordinary"
LOOSE = "loose"

_KIND_RANK = {SPECIAL: 0, ORDINARY: 0, LOOSE: 1}


class MalformedInput(ValueError):
    """Out-of-range vertex ids, non-integer or oversized weights, bad files."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InternalError(RuntimeError):
    """An internal invariant was violated; indicates a bug, not bad input."""


class Arc:
    """One directed arc.  Immutable."""

    __slots__ = ("tail", "head", "weight", "kind")

    def __init__(self, tail: int, head: int, weight: int, kind: str = ORDINARY):
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("Arc is immutable")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.tail, self.head)

    def __repr__(self):
        return f"Arc({self.tail}->{self.head}, w={self.weight}, {self.kind})"

    def __eq__(self, other):
        return (
            isinstance(other, Arc)
            and self.tail == other.tail
            and self.head == other.head
            and self.weight == other.weight
            and self.kind == other.kind
        )

    def __hash__(self):
        return hash((self.tail, self.head, self.weight, self.kind))


def _arc_sort_key(a: Arc):
    return (a.tail, a.head, _KIND_RANK[a.kind], a.weight)


class WeightedDigraph:
    """Simple digraph on vertices 1..n; immutable after construction.

    After normalization there are no self loops and at most one original arc
    per ordered pair; after augmentation there may additionally be one loose
    arc per ordered pair.  Arcs are kept in a deterministic order.
    """

    def __init__(self, n: int, arcs, origin: str = "directed-input"):
        self.n = n
        self.arcs = tuple(sorted(arcs, key=_arc_sort_key))
        self.origin = origin
        by_pair: dict[tuple[int, int], list[Arc]] = {}
        out: dict[int, list[Arc]] = {v: [] for v in range(1, n + 1)}
        for a in self.arcs:
            by_pair.setdefault(a.pair, []).append(a)
            out[a.tail].append(a)
        self._by_pair = by_pair
        self._out = out

    # -- lookups -------------------------------------------------------

    def out_arcs(self, v: int) -> list[Arc]:
        return self._out[v]

    def arcs_between(self, u: int, v: int) -> list[Arc]:
        return self._by_pair.get((u, v), [])

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._by_pair

    def arc(self, u: int, v: int, kind: str | None = None) -> Arc | None:
        """Cheapest arc from u to v, optionally restricted to one kind."""
        best = None
        for a in self.arcs_between(u, v):
            if kind is not None and a.kind != kind:
                continue
            if best is None or a.weight < best.weight:
                best = a
        return best

    def original_arc(self, u: int, v: int) -> Arc | None:
        for a in self.arcs_between(u, v):
            if a.kind != LOOSE:
                return a
        return None

    # -- filtered views --------------------------------------------------

    def special_arcs(self) -> list[Arc]:
        return [a for a in self.arcs if a.kind == SPECIAL]

    def ordinary_arcs(self) -> list[Arc]:
        """Arcs of the ordinary subgraph: ordinary originals plus loose arcs."""
        return [a for a in self.arcs if a.kind != SPECIAL]

    def original_arcs(self) -> list[Arc]:
        """Arcs of the instance as given (everything except added loose arcs)."""
        return [a for a in self.arcs if a.kind != LOOSE]

    def __repr__(self):
        return f"WeightedDigraph(n={self.n}, m={len(self.arcs)}, {self.origin})"


def normalize(raw_arcs, n: int, origin: str = "directed-input") -> WeightedDigraph:
    """Validate raw (tail, head, weight) triples and build a simple digraph.

    Self loops are dropped; among parallel arcs on the same ordered pair only
    the minimum weight survives.  Weights must be exact integers with
    |weight| <= 2**40 and vertex ids must lie in 1..n.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise MalformedInput(f"vertex count must be a nonnegative integer, got {n!r}")
    if n > VERTEX_LIMIT:
        raise MalformedInput(f"vertex count {n} exceeds the supported limit {VERTEX_LIMIT}")
    best: dict[tuple[int, int], int] = {}
    for triple in raw_arcs:
        u, v, w = triple
        for x in (u, v):
            if not isinstance(x, int) or isinstance(x, bool):
                raise MalformedInput(f"vertex id {x!r} is not an integer")
            if not 1 <= x <= n:
                raise MalformedInput(f"vertex id {x} out of range 1..{n}")
        if not isinstance(w, int) or isinstance(w, bool):
            raise MalformedInput(f"weight {w!r} is not an exact integer")
        if abs(w) > WEIGHT_LIMIT:
            raise MalformedInput(f"|weight| {abs(w)} exceeds the bound 2**40")
        if u == v:
            continue
        key = (u, v)
        if key not in best or w < best[key]:
            best[key] = w
    arcs = [Arc(u, v, w) for (u, v), w in sorted(best.items())]
    return WeightedDigraph(n, arcs, origin)


def classify_and_augment(g: WeightedDigraph) -> WeightedDigraph:
    """Tag each arc special or ordinary and add the loose mirror arcs.

    An arc uv is special when vu also exists and the two weights sum to a
    negative number.  For every special arc uv a loose arc vu with weight
    -c(uv) is added; it is dominated by the special arc vu but guarantees
    that the ordinary subgraph has the same reachability as the full graph.
    """
    arcs: list[Arc] = []
    loose: list[Arc] = []
    for a in g.arcs:
        if a.kind == LOOSE:
            raise InternalError("classify_and_augment expects an unaugmented digraph")
        opp = g.original_arc(a.head, a.tail)
        if opp is not None and a.weight + opp.weight < 0:
            arcs.append(Arc(a.tail, a.head, a.weight, SPECIAL))
            loose.append(Arc(a.head, a.tail, -a.weight, LOOSE))
        else:
            arcs.append(Arc(a.tail, a.head, a.weight, ORDINARY))
    return WeightedDigraph(g.n, arcs + loose, g.origin)


def _canonical_cycle(vertices: list[int]) -> list[int]:
    """Rotate a cycle so the minimum vertex leads, preferring the direction
    with the smaller successor.  Makes witnesses reproducible."""
    k = vertices.index(min(vertices))
    rot = vertices[k:] + vertices[:k]
    rev = [rot[0]] + rot[:0:-1]
    return rot if rot[1:] <= rev[1:] else rev


class ForestCycle:
    """Witness that the special pairs contain an undirected cycle.

    The cycle corresponds to two oppositely directed cycles whose total
    weight is negative, so at least one of them is a negative directed cycle
    with three or more arcs: the instance is not nearly conservative.
    """

    def __init__(self, vertices):
        self.vertices = tuple(vertices)

    def __repr__(self):
        return f"ForestCycle({' '.join(map(str, self.vertices))})"


class NegativeTree:
    """One nontrivial component of the special-pair forest.

    Vertices are listed in breadth-first order from the root (the minimum
    vertex id), so every vertex is preceded by its parent.  ``parent`` maps
    each non-root vertex to (parent, weight child->parent, weight
    parent->child); both directions of every tree edge are special arcs.
    """

    def __init__(self, vertices, parent: dict[int, tuple[int, int, int]]):
        self.vertices = tuple(vertices)
        self.root = self.vertices[0]
        self.parent = parent
        self.index = {v: i for i, v in enumerate(self.vertices)}
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        weight_to: dict[tuple[int, int], int] = {}
        for child, (par, w_up, w_down) in parent.items():
            adj[child].append((par, w_up))
            adj[par].append((child, w_down))
            weight_to[(child, par)] = w_up
            weight_to[(par, child)] = w_down
        for v in adj:
            adj[v].sort()
        self.adj = adj
        self.weight_to = weight_to

    def __len__(self):
        return len(self.vertices)

    def path_vertices(self, s: int, t: int) -> list[int]:
        """The unique tree path from s to t, as a vertex list."""
        if s == t:
            return [s]
        prev = {s: None}
        q = deque([s])
        while q:
            x = q.popleft()
            if x == t:
                break
            for y, _ in self.adj[x]:
                if y not in prev:
                    prev[y] = x
                    q.append(y)
        path = [t]
        while path[-1] != s:
            path.append(prev[path[-1]])
        path.reverse()
        return path

    def path_weight(self, s: int, t: int) -> int:
        path = self.path_vertices(s, t)
        return sum(self.weight_to[(x, y)] for x, y in zip(path, path[1:]))

    def __repr__(self):
        return f"NegativeTree(root={self.root}, size={len(self.vertices)})"


class NegativeForest:
    """All negative trees of a digraph, plus a vertex -> tree index map."""

    def __init__(self, trees):
        self.trees = tuple(trees)
        self.vertex_to_tree: dict[int, int] = {}
        for i, t in enumerate(self.trees):
            for v in t.vertices:
                self.vertex_to_tree[v] = i

    def tree_of(self, v: int) -> int | None:
        return self.vertex_to_tree.get(v)

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)


def build_negative_forest(g: WeightedDigraph) -> NegativeForest | ForestCycle:
    """Extract the negative trees, or a witness cycle if they do not exist.

    The undirected graph on the special pairs must be a forest for the
    instance to be nearly conservative; its components with at least one
    edge become the negative trees, each rooted at its minimum vertex id.
    """
    adj: dict[int, list[int]] = {}
    for a in g.special_arcs():
        if a.tail < a.head:
            adj.setdefault(a.tail, []).append(a.head)
            adj.setdefault(a.head, []).append(a.tail)
    for v in adj:
        adj[v].sort()

    # Cycle check by iterative DFS over the undirected special-pair graph.
    # In an undirected DFS every non-tree edge closes a cycle with an
    # ancestor, so climbing the parent chain recovers a witness.
    seen: dict[int, int] = {}  # vertex -> DFS parent (0 for roots)
    for start in sorted(adj):
        if start in seen:
            continue
        seen[start] = 0
        stack = [(start, iter(adj[start]))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w == seen[v]:
                    continue
                if w not in seen:
                    seen[w] = v
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
                cyc = [v]
                x = v
                while x != w:
                    x = seen[x]
                    cyc.append(x)
                cyc.reverse()
                return ForestCycle(_canonical_cycle(cyc))
            if not advanced:
                stack.pop()

    # Forest confirmed: carve trees out of the components, rooted at min id.
    trees = []
    done: set[int] = set()
    for root in sorted(adj):
        if root in done:
            continue
        order = [root]
        parent: dict[int, tuple[int, int, int]] = {}
        done.add(root)
        q = deque([root])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w in done:
                    continue
                done.add(w)
                up = g.arc(w, u, SPECIAL)
                down = g.arc(u, w, SPECIAL)
                if up is None or down is None:
                    raise InternalError("special pair lost while building a tree")
                parent[w] = (u, up.weight, down.weight)
                order.append(w)
                q.append(w)
        trees.append(NegativeTree(order, parent))
    return NegativeForest(trees)


class InducedSubgraph:
    """A vertex-induced subgraph relabeled to local ids 1..r.

    ``to_global[local]`` maps back to the parent graph (index 0 unused);
    arc kinds and weights are preserved verbatim.
    """

    def __init__(self, graph: WeightedDigraph, to_global, local_of):
        self.graph = graph
        self.to_global = to_global
        self.local_of = local_of

    def globalize(self, a: Arc) -> Arc:
        return Arc(self.to_global[a.tail], self.to_global[a.head], a.weight, a.kind)


def induced_subgraph(g: WeightedDigraph, vertices) -> InducedSubgraph:
    verts = sorted(vertices)
    local_of = {v: i for i, v in enumerate(verts, start=1)}
    to_global = [0] + verts
    arcs = [
        Arc(local_of[a.tail], local_of[a.head], a.weight, a.kind)
        for a in g.arcs
        if a.tail in local_of and a.head in local_of
    ]
    return InducedSubgraph(WeightedDigraph(len(verts), arcs, g.origin), to_global, local_of)
