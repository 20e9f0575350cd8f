from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pointfree import rline
from pointfree.rline import (
    BOTTOM,
    INF,
    NEG_INF,
    TOP,
    InputPunctured,
    ParseError,
    interval,
    io_completely_below,
    io_fill,
    io_heyting,
    io_is_punctured,
    io_join,
    io_leq,
    io_meet,
    io_pseudocomplement,
    is_unpunctured,
    parse,
    pl_join,
    pl_meet,
    prop16_check,
)

P = parse
grid = st.sampled_from([NEG_INF] + [F(k, 2) for k in range(-6, 7)] + [INF])


@st.composite
def opens(draw, max_intervals=3):
    ivs = []
    for _ in range(draw(st.integers(0, max_intervals))):
        a, b = draw(grid), draw(grid)
        if a < b:
            ivs.append((a, b))
    return rline.IntervalOpen(tuple(ivs))


unpunctured = opens().map(io_fill)


def test_parse_and_print():
    u = P("(0,1)u(3/2,2)u(5,inf)")
    assert str(u) == "(0,1)u(3/2,2)u(5,inf)"
    assert P("(-inf,0)") == interval(NEG_INF, 0)
    assert P("empty") == BOTTOM and P("R") == TOP
    with pytest.raises(ParseError):
        P("(1,0)")
    with pytest.raises(ParseError):
        P("[0,1]")


def test_canonical_form():
    assert P("(0,2)u(1,3)") == P("(0,3)")
    assert len(P("(0,1)u(1,2)").intervals) == 2  # abutment kept, 1 is missing


def test_join_meet_examples():
    assert io_join(P("(0,1)"), P("(1,2)")) == P("(0,1)u(1,2)")
    assert 1 not in io_join(P("(0,1)"), P("(1,2)"))
    assert io_meet(P("(0,2)"), P("(1,3)")) == P("(1,2)")
    u = P("(0,1)u(2,5)")
    assert io_join(u, BOTTOM) == u and io_meet(u, TOP) == u


def test_pseudocomplement_examples():
    assert io_pseudocomplement(P("(0,1)")) == P("(-inf,0)u(1,inf)")
    assert io_pseudocomplement(BOTTOM) == TOP and io_pseudocomplement(TOP) == BOTTOM
    assert io_pseudocomplement(P("(0,1)u(1,2)")) == P("(-inf,0)u(2,inf)")


def test_heyting_examples():
    u = P("(0,1)u(3,4)")
    assert io_heyting(u, u) == TOP
    assert io_heyting(P("(0,2)"), P("(0,1)")) == P("(-inf,1)u(2,inf)")
    assert io_heyting(TOP, u) == u


@given(opens(), opens(), opens())
def test_heyting_adjunction(a, b, c):
    assert io_leq(io_meet(a, c), b) == io_leq(c, io_heyting(a, b))


def test_completely_below_examples():
    assert io_completely_below(P("(0,1)"), P("(-1,2)"))
    assert not io_completely_below(P("(0,1)"), P("(0,2)"))
    assert io_completely_below(BOTTOM, P("(0,1)"))


@given(opens(), opens())
def test_completely_below_means_closure_inside(u, v):
    # on the line ≪ is "the closure of u sits inside v"
    lhs = io_completely_below(u, v)
    closure_in = all(
        (a == NEG_INF or a in v) and (b == INF or b in v) and io_leq(interval(a, b), v)
        for a, b in u.intervals
    )
    assert lhs == closure_in


def test_punctured_examples():
    v = io_is_punctured(P("(0,1)u(1,2)"))
    assert v.value and list(v.witness) == [1]
    assert not io_is_punctured(P("(0,1)u(2,3)"))
    assert not io_is_punctured(TOP)


def test_fill_examples():
    assert io_fill(P("(0,1)u(1,2)")) == P("(0,2)")
    assert io_fill(P("(0,1)u(1,2)u(2,3)")) == P("(0,3)")
    u = P("(0,1)u(2,3)")
    assert io_fill(u) == u


@given(opens(), opens())
def test_fill_is_a_nucleus(u, v):
    fu = io_fill(u)
    assert io_leq(u, fu) and io_fill(fu) == fu and is_unpunctured(fu)
    assert io_fill(io_meet(u, v)) == io_meet(fu, io_fill(v))


def test_pointless_fragment_examples():
    assert pl_join([P("(0,1)"), P("(1,2)")]) == P("(0,2)")
    u = P("(0,1)u(2,3)")
    assert pl_join([u]) == u
    with pytest.raises(InputPunctured):
        pl_meet([P("(0,1)u(1,2)"), TOP])


@given(unpunctured, unpunctured)
def test_pl_meet_stays_unpunctured(u, v):
    assert is_unpunctured(pl_meet([u, v]))


def test_ray_examples():
    r = prop16_check(0, 0)
    assert r.join_is_top and r.exact_ok
    r = prop16_check(1, 0)
    assert r.meet_is_bottom and r.exact_ok
    # p = q: the rays (p,∞) and (-∞,p) are disjoint, so the meet is ⊥ even though p ≯ q
    assert prop16_check(F(1, 3), F(1, 3)).meet_is_bottom
    assert io_join(rline.right_ray(0), rline.left_ray(1)) == TOP


def test_ray_join_fails_when_p_above_q():
    r = prop16_check(1, 0)
    assert not r.join_is_top
