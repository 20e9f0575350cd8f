from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import SMALL, A, B, BOT, M, TOP, TOP4
from pointfree import filters as flt
from pointfree import rline
from pointfree.congruence import dense_cong, enumerate_congruences, quotient
from pointfree.frame import FrameHom, FrameError, identity_hom
from pointfree.order import is_completely_regular, maxima
from pointfree.rline import TOP as RTOP, interval, parse

frames = st.sampled_from(SMALL).map(lambda e: e.frame)


def test_filter_validation(C3):
    with pytest.raises(FrameError):
        flt.Filter(C3, [BOT])


def test_round_examples(C3, B2):
    assert flt.is_round(flt.principal(C3, TOP))
    assert not flt.is_round(flt.principal(C3, M))
    assert flt.round_core(flt.principal(C3, M)).members == {TOP}
    assert flt.round_core(flt.principal(B2, A)).members == {A, TOP4}


@given(frames)
def test_round_core_is_round_and_fixes_round_filters(f):
    for x in flt.enumerate_filters(f):
        core = flt.round_core(x)
        assert flt.is_round(core) and core.members <= x.members
        if flt.is_round(x):
            assert core == x


def test_point_filter_round_witness():
    y = flt.point_filter(0)
    u = parse("(-1,1)")
    assert y.contains(u) and not y.contains(parse("(1,2)"))
    w = y.round_witness(u)
    assert w == interval(F(-1, 2), F(1, 2))
    assert flt.is_round(y, [u]).value


def test_point_filter_regular_witness():
    y = flt.point_filter(0)
    V = parse("(-inf,0)u(2,inf)")
    b = y.regular_witness(V)
    assert y.contains(b) and not rline.io_leq(rline.io_pseudocomplement(b), V)
    assert flt.is_regular(y, [V]).witness == 1


def test_finite_regularity(one, C3, B2):
    assert flt.is_regular(flt.principal(one, 0))
    # a proper round filter on a finite frame is never regular
    for f in (C3, B2):
        for x in flt.enumerate_filters(f):
            if x.proper and flt.is_round(x):
                assert not flt.is_regular(x)


def test_x_a_on_line_is_not_regular():
    # x_a for a = ℝ∖{0}: members are the opens not inside a, i.e. containing 0;
    # the pseudocomplements of members climb towards a but never cover 0
    a = parse("(-inf,0)u(0,inf)")
    prev = rline.BOTTOM
    for n in range(1, 8):
        members = [interval(F(-1, k), F(1, k)) for k in range(1, n + 1)] + [RTOP]
        stars = rline.io_join_all(rline.io_pseudocomplement(b) for b in members)
        assert rline.io_leq(prev, stars) and rline.io_leq(stars, a) and 0 not in stars
        prev = stars
    assert stars == parse("(-inf,-1/7)u(1/7,inf)")


def test_maximal_round_examples(B2):
    assert flt.is_maximal_round(flt.principal(B2, A))
    assert not flt.is_maximal_round(flt.principal(B2, TOP4))


@given(frames)
def test_distinct_maximal_round_filters_are_separated(f):
    mr = flt.maximal_round_filters(flt.enumerate_filters(f))
    for i, x in enumerate(mr):
        for y in mr[i + 1:]:
            assert flt.independence_witness(x, y) is not None


def test_filter_of_max_examples(C3, B2):
    r = flt.filter_of_max(B2, A)
    assert r.x.members == {B, TOP4}
    r = flt.filter_of_max(C3, M)
    assert r.x.members == {TOP}
    with pytest.raises(flt.NotMaximal):
        flt.filter_of_max(C3, BOT)


def test_point_filter_is_y_0():
    y = flt.point_filter(0)
    assert y.contains(parse("(-1,1)u(3,4)"))
    assert not y.contains(parse("(-1,0)u(0,1)"))  # punctured, outside the fragment


def test_image_filter_examples(C3, C2, B2):
    x = flt.principal(B2, A)
    assert flt.image_filter(identity_hom(B2), x).filter == x
    d = quotient(B2, dense_cong(B2)).map
    assert flt.image_filter(d, x).filter.members == {d(A), d(TOP4)}
    m = FrameHom(C3, C2, [0, 1, 1])
    assert flt.image_filter(m, flt.principal(C3, TOP)).filter.members == {1}


@given(frames)
def test_image_properness_prediction(f):
    fs = flt.enumerate_filters(f)
    for c in enumerate_congruences(f, limit=None)[:4]:
        m = quotient(f, c).map
        for x in fs:
            r = flt.image_filter(m, x)
            assert r.proper == r.proper_predicted


def test_spatial_support_examples(one, B2):
    s = flt.spatial_support(B2)
    assert len(s.filters) == 2 and s.independent
    a, b = s.witnesses[(0, 1)]
    assert B2.meet[a, b] == BOT
    assert flt.spatial_support(one).filters == []


def test_round_ideal_duality_examples(C3, B2):
    assert flt.round_ideal_dual(flt.principal(C3, TOP)).members == {BOT}
    assert flt.round_ideal_dual(flt.principal(B2, A)).members == {BOT, B}


def test_round_ideal_round_trip_on_cr_frames():
    for e in SMALL:
        f = e.frame
        if not is_completely_regular(f):
            continue
        for x in flt.enumerate_filters(f):
            if flt.is_round(x):
                i = flt.round_ideal_dual(x)
                assert flt.is_round_ideal(i)
                assert flt.round_filter_dual(i) == x


def test_enumeration_gate():
    from pointfree.frame import boolean

    with pytest.raises(FrameError):
        flt.enumerate_filters(boolean(5), limit=16)


def test_ultrafilters_are_x_a_on_boolean(B2):
    ultra = {x.members for x in flt.ultrafilters(flt.enumerate_filters(B2))}
    assert ultra == {flt.x_filter(B2, a).members for a in maxima(B2)}
