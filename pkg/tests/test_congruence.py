from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import SMALL, A, B, BOT, M, TOP
from pointfree.congruence import (
    Congruence,
    NotACongruence,
    atoms_of,
    brute_force_congruences,
    closed_cong,
    cong_join,
    cong_nucleus,
    dense_cong,
    enumerate_congruences,
    hom_cong,
    identity_cong,
    lemma10_sets,
    max_congruences,
    maximal_elements,
    open_cong,
    preimage_cong,
    quotient,
    total_cong,
)
from pointfree.frame import interval_frame, is_isomorphic, subframe
from pointfree.order import is_boolean
from pointfree.reflection import spatial_part

frames = st.sampled_from(SMALL).map(lambda e: e.frame)


def classes(c):
    return sorted(c.classes)


def test_open_closed_extremes(C3, B2):
    for f in (C3, B2):
        assert open_cong(f, f.top).is_identity() and closed_cong(f, f.bottom).is_identity()
        assert open_cong(f, f.bottom).is_total() and closed_cong(f, f.top).is_total()


def test_open_closed_on_chain(C3):
    assert classes(open_cong(C3, M)) == [(BOT,), (M, TOP)]
    assert classes(closed_cong(C3, M)) == [(BOT, M), (TOP,)]
    assert cong_join([open_cong(C3, M), closed_cong(C3, M)]).is_total()


def test_dense_examples(C3, B2):
    assert dense_cong(B2).is_identity()
    assert classes(dense_cong(C3)) == [(BOT,), (M, TOP)]
    assert quotient(C3, dense_cong(C3)).quotient.size == 2


@given(frames)
def test_dense_quotient_is_dense(f):
    q = quotient(f, dense_cong(f))
    assert [a for a in f if q.map(a) == q.quotient.bottom] == [f.bottom]


def test_non_congruence_rejected(C3):
    with pytest.raises(NotACongruence):
        Congruence(C3, [0, 1, 0])


def test_join_with_identity(C3):
    c = open_cong(C3, M)
    assert cong_join([c, identity_cong(C3)]) == c


@given(frames)
def test_enumeration_matches_brute_force(f):
    if f.size > 6:
        return
    assert set(enumerate_congruences(f, limit=None)) == set(brute_force_congruences(f))


@given(frames)
def test_pair_membership_via_boxes(f):
    congs = enumerate_congruences(f, limit=None)
    for xi in congs[:6]:
        for a, b in product(f, f):
            if not f.leq[a, b]:
                continue
            box = open_cong(f, a) & closed_cong(f, b)
            assert xi.related(a, b) == (box <= xi)


def test_hom_cong_examples(C3):
    from pointfree.frame import identity_hom

    assert hom_cong(identity_hom(C3)).is_identity()
    s = spatial_part(C3)
    assert classes(hom_cong(s.map)) == [(BOT, M), (TOP,)]


@given(frames)
def test_kernel_bounds_from_top_and_bottom_fibres(f):
    for c in enumerate_congruences(f, limit=None):
        m = quotient(f, c).map
        parts = [open_cong(f, a) for a in f if m(a) == m.target.top]
        parts += [closed_cong(f, a) for a in f if m(a) == m.target.bottom]
        assert cong_join(parts) <= hom_cong(m)


def test_quotient_examples(C3, B2):
    assert is_isomorphic(quotient(B2, identity_cong(B2)).quotient, B2)
    for f in (C3, B2):
        for a in f:
            # quotient by Φ_a is the sublocale {a → b}
            q = quotient(f, open_cong(f, a)).quotient
            heyting_image = sorted({int(f.heyting_table[a, b]) for b in f})
            assert is_isomorphic(q, subframe(f, heyting_image).frame) if f.bottom in heyting_image \
                else q.size == len(heyting_image)
            # quotient by Ψ_a is ↑a
            assert is_isomorphic(quotient(f, closed_cong(f, a)).quotient, interval_frame(f, a, f.top).frame)


@given(frames)
def test_preimage(f):
    for c in enumerate_congruences(f, limit=None)[:5]:
        q = quotient(f, c)
        g = q.quotient
        assert preimage_cong(q.map, identity_cong(g)) == hom_cong(q.map)
        assert preimage_cong(q.map, total_cong(g)).is_total()
        ra = q.map.right_adjoint
        for b in g:
            lhs = preimage_cong(q.map, open_cong(g, b))
            assert lhs == cong_join([hom_cong(q.map), open_cong(f, ra[b])])


def test_max_congruences_examples(C3, B2, one):
    # Con C3 is the four-element Boolean lattice, so both Φ_m and Ψ_m are maximal
    congs = enumerate_congruences(C3, limit=None)
    assert set(maximal_elements(congs)) == {open_cong(C3, M), closed_cong(C3, M)}
    assert set(max_congruences(C3)) == {open_cong(C3, M), closed_cong(C3, M)}
    assert set(max_congruences(B2)) == {closed_cong(B2, A), closed_cong(B2, B)}
    assert max_congruences(one) == []
    assert maximal_elements(enumerate_congruences(one, limit=None)) == []


@given(frames)
def test_max_congruences_match_enumeration(f):
    congs = enumerate_congruences(f, limit=None)
    assert set(max_congruences(f)) == set(maximal_elements(congs))


@given(frames)
def test_max_and_atoms_of_con_match_maxima_exactly_on_boolean(f):
    congs = enumerate_congruences(f, limit=None)
    psi, phi = lemma10_sets(f)
    holds = set(maximal_elements(congs)) == psi and set(atoms_of(congs)) == phi
    assert holds == is_boolean(f) or f.size == 1


@given(frames)
def test_nucleus_congruence_round_trip(f):
    for c in enumerate_congruences(f, limit=None):
        n = cong_nucleus(c)
        assert Congruence(f, n.op) == c
