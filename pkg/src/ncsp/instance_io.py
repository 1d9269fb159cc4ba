"""Line-oriented instance files and the mixed-graph reduction.

Grammar (ASCII, 1-based ids, signed decimal integer weights):

    c <comment>          ignored
    p ncd <n> <m>        directed instance header
    p ncm <n> <m>        mixed instance header
    a <u> <v> <w>        directed arc
    e <u> <v> <w>        undirected edge (mixed instances only)

The header's m counts the a and e lines together.  ``emit`` writes the
canonical form (sorted a lines, then sorted e lines, no comments), so
emit(parse(emit(x))) is byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph_core import MalformedInput, WeightedDigraph, classify_and_augment, normalize

DIRECTED = "ncd"
MIXED = "ncm"


@dataclass
class RawInstance:
    kind: str
    n: int
    arcs: list[tuple[int, int, int]] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)


def _int_field(tok: str, what: str, lineno: int) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise MalformedInput(f"{what} {tok!r} is not an integer", lineno) from None


def parse(text: str) -> RawInstance:
    """Parse an instance file; raises MalformedInput with the line number."""
    inst: RawInstance | None = None
    declared = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if inst is not None:
                raise MalformedInput("duplicate header line", lineno)
            if len(parts) != 4 or parts[1] not in (DIRECTED, MIXED):
                raise MalformedInput("header must be 'p ncd|ncm <n> <m>'", lineno)
            n = _int_field(parts[2], "vertex count", lineno)
            declared = _int_field(parts[3], "line count", lineno)
            if n < 0 or declared < 0:
                raise MalformedInput("header counts must be nonnegative", lineno)
            inst = RawInstance(parts[1], n)
        elif tag in ("a", "e"):
            if inst is None:
                raise MalformedInput("arc line before the header", lineno)
            if tag == "e" and inst.kind != MIXED:
                raise MalformedInput("edge line in a directed instance", lineno)
            if len(parts) != 4:
                raise MalformedInput(f"'{tag}' line needs tail head weight", lineno)
            u = _int_field(parts[1], "vertex id", lineno)
            v = _int_field(parts[2], "vertex id", lineno)
            w = _int_field(parts[3], "weight", lineno)
            for x in (u, v):
                if not 1 <= x <= inst.n:
                    raise MalformedInput(f"vertex id {x} out of range 1..{inst.n}", lineno)
            if tag == "a":
                inst.arcs.append((u, v, w))
            else:
                inst.edges.append((min(u, v), max(u, v), w))
        else:
            raise MalformedInput(f"unknown line type {tag!r}", lineno)
    if inst is None:
        raise MalformedInput("missing header line")
    if len(inst.arcs) + len(inst.edges) != declared:
        raise MalformedInput(
            f"header declares {declared} lines, found {len(inst.arcs) + len(inst.edges)}"
        )
    return inst


def parse_file(path) -> RawInstance:
    with open(path, "r", encoding="ascii") as fh:
        return parse(fh.read())


def emit(inst: RawInstance) -> str:
    lines = [f"p {inst.kind} {inst.n} {len(inst.arcs) + len(inst.edges)}"]
    lines += [f"a {u} {v} {w}" for u, v, w in sorted(inst.arcs)]
    lines += [f"e {u} {v} {w}" for u, v, w in sorted(inst.edges)]
    return "\n".join(lines) + "\n"


def write_file(inst: RawInstance, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(emit(inst))


def mixed_to_digraph(inst: RawInstance) -> WeightedDigraph:
    """Reduce a mixed instance to a classified digraph.

    Every undirected edge becomes two opposite arcs of its weight, so a
    negative edge turns into a special pair and a nonnegative edge into an
    ordinary opposite pair; shortest simple routes are preserved exactly.
    """
    triples = list(inst.arcs)
    for u, v, w in inst.edges:
        triples.append((u, v, w))
        triples.append((v, u, w))
    return classify_and_augment(normalize(triples, inst.n, origin="mixed-input"))


def instance_digraph(inst: RawInstance) -> WeightedDigraph:
    """Classified digraph for either instance kind."""
    if inst.kind == MIXED:
        return mixed_to_digraph(inst)
    return classify_and_augment(normalize(inst.arcs, inst.n))
