"""Seeded random instance construction with controllable structure.

Instances are built top-down: vertices are split into strongly connected
components arranged as a chain in the component DAG, each component is
split into weak blocks glued at cut vertices, negative trees are planted
inside blocks, and ordinary filler arcs are sprinkled without disturbing
the requested structure.  One seeded generator drives everything, so equal
configurations produce byte-identical files.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .decomposition import solve
from .graph_core import MalformedInput
from .instance_io import DIRECTED, MIXED, RawInstance, instance_digraph


class GenerationFailed(Exception):
    """Rejection sampling ran out of attempts."""


@dataclass
class GeneratorConfig:
    n: int
    seed: int
    arcs: int = 0                      # ordinary filler arcs
    trees: int = 0
    tree_sizes: list[int] | None = None
    wmin: int = 0
    wmax: int = 20
    scc_count: int = 1
    block_count: int = 1               # per component (hint)
    mixed: bool = False
    ensure_nc: bool = False
    max_attempts: int = 200


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    """Split total into ``parts`` positive summands, uniformly at random."""
    if parts > total:
        raise MalformedInput(f"cannot split {total} vertices into {parts} parts")
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def _build_once(cfg: GeneratorConfig, rng: random.Random) -> RawInstance:
    n = cfg.n
    arcs: dict[tuple[int, int], int] = {}
    edges: dict[tuple[int, int], int] = {}

    def put_arc(u: int, v: int, w: int) -> None:
        key = (u, v)
        if key not in arcs or w < arcs[key]:
            arcs[key] = w

    pos_lo, pos_hi = max(0, cfg.wmin), max(0, cfg.wmax)

    # Components take consecutive id ranges; the component DAG is the chain
    # (component i may send arcs only to components j > i).
    comp_sizes = _composition(rng, n, cfg.scc_count)
    components: list[list[int]] = []
    nxt = 1
    for size in comp_sizes:
        components.append(list(range(nxt, nxt + size)))
        nxt += size

    all_blocks: list[list[int]] = []
    for comp in components:
        r = len(comp)
        nblocks = min(cfg.block_count, max(1, r - 1)) if r > 1 else 1
        fresh_needed = nblocks  # first block >=1 fresh, later ones >=1 fresh each
        if fresh_needed > r:
            nblocks = r
        sizes = _composition(rng, r, nblocks)
        pool = list(comp)
        placed: list[int] = []
        for j, size in enumerate(sizes):
            fresh = pool[:size]
            del pool[:size]
            if j == 0:
                block = fresh
            else:
                block = [rng.choice(placed)] + fresh  # glue at a cut vertex
            placed.extend(fresh)
            all_blocks.append(block)
            if len(block) == 1:
                continue
            ring = list(block)
            rng.shuffle(ring)
            if len(ring) == 2:
                u, v = ring
                put_arc(u, v, rng.randint(pos_lo, pos_hi))
                put_arc(v, u, rng.randint(pos_lo, pos_hi))
            else:
                for u, v in zip(ring, ring[1:] + ring[:1]):
                    put_arc(u, v, rng.randint(pos_lo, pos_hi))

    # Negative trees inside blocks, on vertices not already claimed.
    sizes = list(cfg.tree_sizes) if cfg.tree_sizes else [
        rng.randint(2, 3) for _ in range(cfg.trees)
    ]
    if sum(sizes) > n:
        raise MalformedInput(f"tree vertex budget {sum(sizes)} exceeds n={n}")
    if any(s < 2 for s in sizes):
        raise MalformedInput("negative trees need at least two vertices")
    claimed: set[int] = set()
    for size in sizes:
        rooms = [b for b in all_blocks if len([v for v in b if v not in claimed]) >= size]
        if not rooms:
            raise MalformedInput("no block can host a tree of the requested size")
        block = rng.choice(rooms)
        verts = rng.sample([v for v in block if v not in claimed], size)
        claimed.update(verts)
        grown = [verts[0]]
        for v in verts[1:]:
            u = rng.choice(grown)
            grown.append(v)
            if cfg.mixed:
                edges[(min(u, v), max(u, v))] = -rng.randint(1, max(1, cfg.wmax))
            else:
                a = rng.randint(0, max(0, cfg.wmax))
                put_arc(u, v, a)
                put_arc(v, u, -a - rng.randint(1, max(1, cfg.wmax)))

    # Ordinary fillers: intra-block, or forward across components.
    for _ in range(cfg.arcs):
        w = rng.randint(cfg.wmin, cfg.wmax)
        if cfg.scc_count > 1 and rng.random() < 0.3:
            i = rng.randrange(cfg.scc_count - 1)
            j = rng.randrange(i + 1, cfg.scc_count)
            put_arc(rng.choice(components[i]), rng.choice(components[j]), w)
        else:
            block = rng.choice([b for b in all_blocks if len(b) >= 2])
            u, v = rng.sample(block, 2)
            if cfg.mixed and w >= 0 and rng.random() < 0.3:
                key = (min(u, v), max(u, v))
                if key not in edges:
                    edges[key] = w
                    continue
            put_arc(u, v, w)

    kind = MIXED if cfg.mixed else DIRECTED
    return RawInstance(
        kind,
        n,
        arcs=[(u, v, w) for (u, v), w in sorted(arcs.items())],
        edges=[(u, v, w) for (u, v), w in sorted(edges.items())],
    )


def generate(cfg: GeneratorConfig) -> RawInstance:
    """Build one instance; with ensure_nc, resample until nearly conservative."""
    rng = random.Random(cfg.seed)
    attempts = cfg.max_attempts if cfg.ensure_nc else 1
    for _ in range(attempts):
        inst = _build_once(cfg, rng)
        if not cfg.ensure_nc:
            return inst
        if solve(instance_digraph(inst), want_paths=False).solved:
            return inst
    raise GenerationFailed(
        f"no nearly conservative instance in {cfg.max_attempts} attempts (seed {cfg.seed})"
    )


def single_block_instance(n: int, trees: int, seed: int, tree_size: int = 2) -> RawInstance:
    """One strongly connected single-block instance with exactly ``trees``
    negative trees, nearly conservative by construction.

    Ordinary arcs are heavy enough that no cycle with three or more arcs can
    go negative: every such cycle uses at least one ordinary arc (the
    special pairs form a forest) and the special arcs cannot repay it.
    """
    if trees * tree_size > n:
        raise MalformedInput(f"{trees} trees of size {tree_size} exceed n={n}")
    rng = random.Random(seed)
    heavy = 100 * trees * tree_size + 100
    arcs: list[tuple[int, int, int]] = []
    for u in range(1, n + 1):
        v = u % n + 1
        arcs.append((u, v, heavy + rng.randint(0, 9)))
    base = 1
    for _ in range(trees):
        for v in range(base, base + tree_size - 1):
            arcs.append((v, v + 1, 1))
            arcs.append((v + 1, v, -3))
        base += tree_size
    return RawInstance(DIRECTED, n, arcs=sorted(arcs))
