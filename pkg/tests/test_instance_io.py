import pytest

from ncsp.graph_core import MalformedInput
from ncsp.instance_io import (
    RawInstance,
    emit,
    instance_digraph,
    mixed_to_digraph,
    parse,
)


class TestParse:
    def test_directed_instance(self):
        inst = parse("c demo\np ncd 2 2\na 1 2 2\na 2 1 -5\n")
        assert inst.kind == "ncd" and inst.n == 2
        assert inst.arcs == [(1, 2, 2), (2, 1, -5)]
        g = instance_digraph(inst)
        assert {a.pair for a in g.special_arcs()} == {(1, 2), (2, 1)}

    def test_mixed_instance(self):
        inst = parse("p ncm 2 1\ne 1 2 -3\n")
        assert inst.kind == "ncm" and inst.edges == [(1, 2, -3)]

    def test_out_of_range_id(self):
        with pytest.raises(MalformedInput, match="line 2"):
            parse("p ncd 2 1\na 1 9 0\n")

    def test_edge_in_directed_instance(self):
        with pytest.raises(MalformedInput, match="line 2"):
            parse("p ncd 2 1\ne 1 2 0\n")

    def test_line_count_mismatch(self):
        with pytest.raises(MalformedInput, match="declares 3"):
            parse("p ncd 2 3\na 1 2 0\n")

    def test_missing_header(self):
        with pytest.raises(MalformedInput):
            parse("a 1 2 0\n")

    def test_non_integer_weight(self):
        with pytest.raises(MalformedInput, match="line 2"):
            parse("p ncd 2 1\na 1 2 x\n")

    def test_blank_lines_and_comments_ignored(self):
        inst = parse("\nc hello\np ncd 2 1\n\nc mid\na 1 2 7\n")
        assert inst.arcs == [(1, 2, 7)]


class TestEmit:
    def test_canonical_roundtrip(self):
        inst = RawInstance("ncd", 3, arcs=[(2, 1, 4), (1, 2, 3)])
        text = emit(inst)
        assert text == "p ncd 3 2\na 1 2 3\na 2 1 4\n"
        assert emit(parse(text)) == text

    def test_mixed_roundtrip(self):
        inst = RawInstance("ncm", 3, arcs=[(3, 1, 2)], edges=[(1, 2, -4)])
        text = emit(inst)
        assert text == "p ncm 3 2\na 3 1 2\ne 1 2 -4\n"
        assert emit(parse(text)) == text


class TestMixedReduction:
    def test_negative_edge_becomes_special_pair(self):
        g = mixed_to_digraph(RawInstance("ncm", 2, edges=[(1, 2, -3)]))
        kinds = {(a.tail, a.head, a.weight): a.kind for a in g.arcs}
        assert kinds[(1, 2, -3)] == "special"
        assert kinds[(2, 1, -3)] == "special"
        assert g.origin == "mixed-input"

    def test_nonnegative_edge_becomes_ordinary_pair(self):
        g = mixed_to_digraph(RawInstance("ncm", 2, edges=[(1, 2, 4)]))
        assert not g.special_arcs()
        assert {(a.tail, a.head, a.weight) for a in g.arcs} == {(1, 2, 4), (2, 1, 4)}

    def test_zero_edge_boundary(self):
        g = mixed_to_digraph(RawInstance("ncm", 2, edges=[(1, 2, 0)]))
        assert not g.special_arcs()
        assert len(g.arcs) == 2

    def test_arc_and_edge_on_one_pair_keep_minimum(self):
        inst = RawInstance("ncm", 2, arcs=[(1, 2, 5)], edges=[(1, 2, -3)])
        g = mixed_to_digraph(inst)
        assert g.arc(1, 2).weight == -3
        assert g.arc(2, 1).weight == -3
