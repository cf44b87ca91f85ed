from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multifan.chromatic import enumerate_colorings
from multifan.coloring import PartialColoring, StaleChainError, parse_coloring, validate
from multifan.enumeration import enumerate_connected
from multifan.fans import (
    FanError,
    MultiFan,
    NonElementaryError,
    admissible_extensions,
    classify_tau_sequence,
    extend_multifan,
    fan_order,
    fan_violation,
    format_extended,
    format_fan,
    grow_multifan,
    grow_multifan_randomly,
    linear_sequence,
    maximum_multifan,
    pivot_pairs,
    qualifying_neighbors,
    sequence_violation,
    shift,
    stopping_colors,
    tau_sequences_outside,
)
from multifan.graph import Graph, edge, make_family
from multifan.graph6 import parse_graph6
from multifan.verify import extension_violation, graph_facts

from .conftest import A, B, C, R, S


def coloring_from(text: str, g6: str) -> PartialColoring:
    return parse_coloring(text, parse_graph6(g6))


def build(palette: int, colored: dict[tuple[int, int], int], uncolored: tuple[int, int]) -> PartialColoring:
    n = 1 + max(max(e) for e in [*colored, uncolored])
    g = Graph(n, [*colored, uncolored])
    return PartialColoring(g, palette, colored, [uncolored])


# K5 minus the edge 0-1; under this coloring the fan at 2 for the edge 0-2
# has colors 1 and 4 incomparable, missed at different fan vertices
BRANCHED_G6 = "D^{"
BRANCHED = "palette:4\n0-3:1\n0-4:2\n1-2:3\n1-3:2\n1-4:4\n2-3:4\n2-4:1\n3-4:3\nuncolored:0-2\n"


def corpus_instances(max_n: int = 6):
    """(coloring, center) over every critical edge of every class 2 graph."""
    for n in range(3, max_n + 1):
        for g in enumerate_connected(n):
            f = graph_facts(g)
            if not f.class2:
                continue
            for e in f.critical_edges:
                for c in f.orbits(e):
                    for r in e:
                        yield c, r


def test_c5_fan(c5_coloring):
    fan = grow_multifan(c5_coloring, R)
    assert fan.vertices == (S, C)
    assert fan.edges == ((R, S), (R, C))
    assert fan.vertex_set == {R, S, C}
    assert len(fan) == 3
    order = fan_order(fan)
    assert order.locator == {1: R, 2: S}
    assert order.relation == frozenset()
    assert order.path_to(C) == [S, C]
    st_ = stopping_colors(c5_coloring, R, fan)
    assert list(st_.K) == [2] and not st_.K_F


def test_fan_needs_uncolored_edge_at_center(c5_coloring):
    with pytest.raises(FanError):
        grow_multifan(c5_coloring, A)
    assert fan_violation(c5_coloring, R, [C]) == "fan must start with the uncolored edge"
    assert fan_violation(c5_coloring, R, [S, A]) is not None


def test_shift_on_c5(c5_coloring):
    seq = linear_sequence(c5_coloring, R, [S, C])
    assert seq.tau is None and seq.last == C
    d, dangling = shift(c5_coloring, seq, 0, 1)
    assert dangling == (R, C)
    assert d.color(R, S) == 2
    assert validate(d) is None
    assert all(d.color(*e) == c5_coloring.color(*e) for e in [(S, A), (A, B), (B, C)])


def test_shift_errors(c5_coloring):
    seq = linear_sequence(c5_coloring, R, [S, C])
    with pytest.raises(IndexError):
        shift(c5_coloring, seq, 1, 0)
    with pytest.raises(IndexError):
        shift(c5_coloring, seq, 0, 2)
    other = c5_coloring.recolor({})
    with pytest.raises(StaleChainError):
        shift(other, seq, 0, 1)
    with pytest.raises(FanError):
        linear_sequence(c5_coloring, R, [C, S])
    assert sequence_violation(c5_coloring, R, []) == "empty sequence"
    assert sequence_violation(c5_coloring, R, [S, S]) == "vertices not distinct"
    assert "not adjacent" in sequence_violation(c5_coloring, R, [A])


def test_branched_fan_order():
    c = coloring_from(BRANCHED, BRANCHED_G6)
    fan = grow_multifan(c, 2)
    assert fan.vertices == (0, 1, 4, 3)
    order = fan_order(fan)
    assert order.locator == {1: 1, 2: 2, 3: 0, 4: 0}
    assert order.relation == {(3, 1)}
    assert order.parent == {1: 0, 3: 0, 4: 1}
    assert order.precedes(3, 1) and not order.precedes(1, 3)
    assert not order.comparable(1, 4)
    assert order.path_to(4) == [0, 1, 4]


def test_non_elementary_fan_raises():
    # path 0-1-2 with palette 2 and 0-2 ... a class 1 graph where the fan is not elementary
    c = coloring_from("palette:2\n1-2:1\nuncolored:0-2\n", "BW")
    fan = grow_multifan(c, 0)
    with pytest.raises(NonElementaryError) as info:
        fan_order(fan)
    assert info.value.witness.color == 2


def test_stopping_colors_reject_foreign_fan(c5_coloring):
    fan = grow_multifan(c5_coloring, R)
    with pytest.raises(StaleChainError):
        stopping_colors(c5_coloring.recolor({}), R, fan)


def test_grown_fans_are_maximal_and_order_independent():
    rng = random.Random(3)
    count = 0
    for c, r in corpus_instances(6):
        fan = grow_multifan(c, r)
        for i in range(1, len(fan.vertices) + 1):
            assert fan_violation(c, r, fan.vertices[:i]) is None
        assert admissible_extensions(c, r, fan.vertices) == []
        for _ in range(3):
            other = grow_multifan_randomly(c, r, rng)
            assert other.vertex_set == fan.vertex_set
        count += 1
    assert count > 100


def test_fan_order_properties_on_corpus():
    for c, r in corpus_instances(6):
        fan = grow_multifan(c, r)
        order = fan_order(fan)
        assert set(order.locator) == set(fan.missing())
        for a, b in order.relation:
            assert a != b
            assert not order.precedes(b, a)
        for s in fan.vertices:
            path = order.path_to(s)
            assert path[0] == fan.s0 and path[-1] == s
            assert sequence_violation(c, r, path) is None


@settings(max_examples=50)
@given(st.data())
def test_shift_properties(data):
    g = make_family("petersen-v")
    e = (0, 1)
    orbits = enumerate_colorings(g, e, 3)
    c = data.draw(st.sampled_from(orbits.colorings))
    r = data.draw(st.sampled_from(e))
    fan = grow_multifan(c, r)
    order = fan_order(fan)
    target = data.draw(st.sampled_from(fan.vertices))
    seq = linear_sequence(c, r, order.path_to(target))
    q = len(seq) - 1
    i = data.draw(st.integers(0, q))
    j = data.draw(st.integers(i, q))
    d, dangling = shift(c, seq, i, j)
    assert validate(d) is None
    assert dangling == seq.edges[j]
    assert d.uncolored == (c.uncolored - set(seq.edges[i:j])) | {dangling}
    touched = set(seq.edges)
    assert all(d.color(*f) == c.color(*f) for f in g.edges if f not in touched)


# hand-built sequences for each terminal type; the fan at 0 is (1, 4) with
# missing sets {1} at 0, {4} at 1 and nothing at 4


def _fan_gadget(palette: int, extra: dict) -> tuple[PartialColoring, MultiFan]:
    colored = {
        (0, 4): 4, (1, 5): 1, (1, 6): 2, (1, 7): 3,
        (4, 8): 1, (4, 9): 2, (4, 10): 3,
        **extra,
    }
    c = build(palette, colored, (0, 1))
    fan = grow_multifan(c, 0)
    assert fan.vertices == (1, 4)
    return c, fan


def test_type_a_sequence():
    # 2 misses {3}, 3 misses {2} = tau
    c, fan = _fan_gadget(4, {(0, 2): 2, (0, 3): 3, (2, 11): 1, (2, 12): 4, (3, 13): 1, (3, 14): 4})
    [(seq, typ)] = tau_sequences_outside(c, fan, 2)
    assert seq.vertices == (2, 3)
    assert typ.tag == "A" and typ.hits == ("A",)
    assert typ.witness == (3, 2)


def test_type_d_sequence():
    # 3 misses nothing
    c, fan = _fan_gadget(4, {(0, 2): 2, (0, 3): 3, (2, 11): 1, (2, 12): 4, (3, 13): 1, (3, 14): 4, (3, 15): 2})
    [(seq, typ)] = tau_sequences_outside(c, fan, 2)
    assert seq.vertices == (2, 3)
    assert typ.tag == "D" and typ.hits == ("D",)


def test_type_b_sequence():
    # 2 misses 4, which the fan already misses
    c, fan = _fan_gadget(4, {(0, 2): 2, (0, 3): 3, (2, 11): 1, (2, 12): 3})
    [(seq, typ)] = tau_sequences_outside(c, fan, 2)
    assert seq.vertices == (2,)
    assert typ.tag == "B" and typ.witness == (2, 4)


def test_type_c_sequence():
    # palette 5: 2 misses {3}, 3 misses {5}, 5 misses {3} again
    colored = {
        (0, 4): 4, (1, 6): 1, (1, 7): 2, (1, 8): 3, (1, 9): 5,
        (4, 10): 1, (4, 11): 2, (4, 12): 3, (4, 13): 5,
        (0, 2): 2, (0, 3): 3, (0, 5): 5,
        (2, 14): 1, (2, 15): 4, (2, 16): 5,
        (3, 17): 1, (3, 18): 2, (3, 19): 4,
        (5, 20): 1, (5, 21): 2, (5, 22): 4,
    }
    c = build(5, colored, (0, 1))
    fan = grow_multifan(c, 0)
    assert fan.vertices == (1, 4)
    [(seq, typ)] = tau_sequences_outside(c, fan, 2)
    assert seq.vertices == (2, 3, 5)
    assert typ.tag == "C" and typ.witness == (2, 5, 3)


def test_branching_tau_sequences():
    # 2 misses {3, 5}: one branch through 3 and one through 5
    colored = {
        (0, 4): 4, (1, 6): 1, (1, 7): 2, (1, 8): 3, (1, 9): 5,
        (4, 10): 1, (4, 11): 2, (4, 12): 3, (4, 13): 5,
        (0, 2): 2, (0, 3): 3, (0, 5): 5,
        (2, 14): 1, (2, 15): 4,
        (3, 17): 1, (3, 18): 2, (3, 19): 4, (3, 20): 5,
        (5, 21): 1, (5, 22): 2, (5, 23): 4, (5, 24): 3,
    }
    c = build(5, colored, (0, 1))
    fan = grow_multifan(c, 0)
    seqs = tau_sequences_outside(c, fan, 2)
    assert [s.vertices for s, _ in seqs] == [(2, 3), (2, 5)]
    assert [t.tag for _, t in seqs] == ["D", "D"]


def test_tau_sequence_errors(c5_coloring):
    fan = grow_multifan(c5_coloring, R)
    with pytest.raises(FanError):
        tau_sequences_outside(c5_coloring, fan, 2)  # the 2-edge at r goes into the fan
    with pytest.raises(StaleChainError):
        tau_sequences_outside(c5_coloring.recolor({}), fan, 2)
    loose = MultiFan(R, (S,), c5_coloring, maximal=False)
    with pytest.raises(FanError):
        tau_sequences_outside(c5_coloring, loose, 2)


def test_tau_tags_partition_on_corpus():
    tags = set()
    for n in range(4, 8):
        for g in enumerate_connected(n):
            f = graph_facts(g)
            if not f.class2:
                continue
            for e in f.critical_edges:
                for r in e:
                    for fan in f.max_fan(e, r).maximizers:
                        c = fan.coloring
                        for tau, v in c.colors_at(r).items():
                            if v in fan.vertex_set:
                                continue
                            for seq, typ in tau_sequences_outside(c, fan, tau):
                                assert len(typ.hits) == 1
                                assert classify_tau_sequence(c, fan, seq) == typ
                                tags.add(typ.tag)
    assert tags == {"B", "D"}


# extension fixtures

# maximal but not maximum fan at 3 for the edge 3-4, with a nonempty extension
EXTENDED_G6 = "ER\\w"
EXTENDED = (
    "palette:4\n0-2:1\n1-3:1\n1-4:2\n1-5:3\n2-3:3\n2-4:4\n2-5:2\n3-5:4\n4-5:1\nuncolored:3-4\n"
)

# a maximum fan where the only candidate neighbor is dropped because its edge
# to the pivot carries a stopping color outside the fan
FILTERED_G6 = "GxHYo{"
FILTERED = (
    "palette:4\n0-1:1\n0-2:2\n1-5:2\n1-6:3\n2-3:1\n2-4:4\n3-5:3\n3-6:4\n3-7:2\n"
    "4-5:1\n4-6:2\n4-7:3\n5-7:4\n6-7:1\nuncolored:1-2\n"
)


def test_extension_with_nonempty_sequences():
    c = coloring_from(EXTENDED, EXTENDED_G6)
    fan = grow_multifan(c, 3)
    assert fan.vertices == (4, 2)
    assert (4, 3) in pivot_pairs(c, fan)
    x = extend_multifan(c, fan, 4, 3)
    assert [(v0, seq.vertices, typ.tag) for v0, seq, typ in x.extension] == [(1, (1, 5), "D")]
    assert x.extension_vertices == {1, 5}
    assert x.vertex_set == {3, 4, 2, 1, 5}
    assert x.sequences_containing(5)[0][0] == 1
    assert x.locate(2) == 3
    assert x.locate(2, x.extension_vertices) is None
    assert extension_violation(c.host, c, fan, x) is None
    assert "from 1 type=D" in format_extended(x)
    # this fan is not maximum: some other coloring gives a larger one
    assert maximum_multifan(c.host, (3, 4), 3).size > len(fan)


def test_extension_filters_stopping_colors():
    c = coloring_from(FILTERED, FILTERED_G6)
    fan = grow_multifan(c, 1)
    assert fan.vertices == (2, 6)
    st_ = stopping_colors(c, 1, fan)
    assert list(st_.K_F) == [2]
    assert c.color(0, 2) == 2
    assert qualifying_neighbors(c, fan, 2, st_.K_F) == []
    x = extend_multifan(c, fan, 2, 3)
    assert x.extension == ()
    assert x.vertex_set == fan.vertex_set


def test_extension_errors(c5_coloring):
    fan = grow_multifan(c5_coloring, R)
    with pytest.raises(FanError, match="not a stopping color"):
        extend_multifan(c5_coloring, fan, S, 1)
    with pytest.raises(FanError, match="not a fan vertex"):
        extend_multifan(c5_coloring, fan, A, 2)
    x = extend_multifan(c5_coloring, fan, S, 2)
    assert x.extension == ()


def test_maximum_fans():
    c5 = make_family("cycle:5")
    mf = maximum_multifan(c5, (0, 1), 0)
    assert mf.certified and mf.size == 3 and mf.colorings_examined == 1
    pv = maximum_multifan(make_family("petersen-v"), (0, 1), 0)
    assert pv.certified and pv.size == 4
    assert all(len(f) == 4 for f in pv.maximizers)
    with pytest.raises(FanError, match="class 1"):
        maximum_multifan(make_family("cycle:6"), (0, 1), 0)
    with pytest.raises(FanError, match="not critical"):
        maximum_multifan(make_family("petersen"), (0, 1), 0)
    with pytest.raises(FanError, match="not an endpoint"):
        maximum_multifan(c5, (0, 1), 3)


def test_uncertified_maximum_uses_random_restarts():
    g = make_family("petersen-v")
    mf = maximum_multifan(g, (0, 1), 0, limit=1, restarts=40, seed=1)
    assert not mf.certified
    assert mf.colorings_examined == 41
    assert mf.size <= 4


def test_format_fan(c5_coloring):
    fan = grow_multifan(c5_coloring, R)
    text = format_fan(fan, fan_order(fan), stopping_colors(c5_coloring, R, fan))
    assert text.splitlines() == [
        "multi-fan center=0 maximal=true",
        "  0  missing={1}",
        "  0-1:- -> 1  missing={2}",
        "  0-4:2 -> 4  missing={}",
        "  locator: {1->0, 2->1}",
        "  order: {}",
        "  stopping K={2} K_F={}",
    ]


def test_edge_helper_is_sorted():
    assert edge(C, R) == (R, C)
