import pytest
from hypothesis import given, strategies as st

from conftest import SMALL, A, B, BOT, M, TOP
from pointfree.congruence import enumerate_congruences, open_cong, quotient
from pointfree.frame import FrameHom, enumerate_homs, identity_hom, is_isomorphic
from pointfree.order import center, is_completely_regular, maxima
from pointfree.reflection import (
    ClassViolation,
    SourceOfHoms,
    count_diagonals,
    cr_coreflection,
    em_classify,
    em_diagonalize,
    em_factorize,
    fat_normal_form,
    fat_reflection,
    in_E,
    in_M,
    is_skinny,
    largest_cr_subframe_oracle,
    ligature,
    pointless_part,
    pointless_spatial_pairing,
    scattered_atomless_parts,
    spatial_part,
)

frames = st.sampled_from(SMALL).map(lambda e: e.frame)
CR = [e.frame for e in SMALL if is_completely_regular(e.frame)]


def test_spatial_part_examples(one, C3, B2):
    assert is_isomorphic(spatial_part(B2).quotient, B2)
    assert spatial_part(C3).quotient.size == 2
    assert spatial_part(one).quotient.size == 1


@given(frames)
def test_pointless_part_is_trivial(f):
    assert pointless_part(f).quotient.size == 1


def test_skinny_examples(C2, C3):
    emb = FrameHom(C2, C3, [0, 2])
    v = is_skinny(emb)
    assert v.value and v.witness.maxima_into_kernel


def test_surjections_and_composites_are_skinny():
    for f in CR:
        qs = [quotient(f, c).map for c in enumerate_congruences(f, limit=None)]
        assert all(is_skinny(q) for q in qs)
        for q in qs[:4]:
            for r in [quotient(q.target, c).map for c in enumerate_congruences(q.target, limit=None)][:3]:
                assert is_skinny(q.then(r))


def test_em_classify_examples(C3, B2):
    for f in (C3, B2):
        cls = em_classify(identity_hom(f))
        assert cls.in_E and cls.in_M
        assert in_M(spatial_part(f).map)
    for f in CR:
        assert in_E(pointless_part(f).map)


def test_em_factorize_examples(C3, C2, B2):
    fac = em_factorize(SourceOfHoms(B2, [identity_hom(B2)]))
    assert fac.P == frozenset() and fac.e.is_injective()
    fac = em_factorize(SourceOfHoms(B2, []))
    assert fac.P == {A, B} and fac.e.target.size == 1  # the pointless reflection
    # on C3 the join of Φ over the maxima is only Φ_m, which stops short of π
    fac = em_factorize(SourceOfHoms(C3, []))
    assert fac.P == frozenset(maxima(C3)) and fac.e.target.size == 2 and not fac.hat_in_M
    fac = em_factorize(SourceOfHoms(C3, [FrameHom(C3, C2, [0, 1, 1])]))
    assert fac.P == {M} and fac.xi == open_cong(C3, M) and fac.e.target.size == 2


def test_em_factorize_on_cr_sources():
    for f in CR:
        for g in CR[:4]:
            arms = enumerate_homs(f, g, limit=3)
            fac = em_factorize(SourceOfHoms(f, arms))
            assert fac.e_in_E and fac.hat_in_M
            assert all(h(fac.e(a)) == arm(a) for h, arm in zip(fac.arms_hat, arms) for a in f)


def test_em_factorize_outside_hypothesis():
    # an empty source on the 7-element frame of the three-point poset 0 < 1, 0 < 2... any
    # non-Boolean frame with a maximum m and m → ⊥ = ⊥ loses M-membership
    bad = []
    for e in SMALL:
        fac = em_factorize(SourceOfHoms(e.frame, []))
        if not fac.hat_in_M:
            bad.append(e.name)
            assert not is_completely_regular(e.frame)
    assert bad


def test_em_diagonalize_trivial_cases(B2, C2):
    e = identity_hom(B2)
    f = FrameHom(B2, C2, [0, 1, 0, 1])
    d = em_diagonalize(e, f, [f], [identity_hom(C2)])
    assert d.map == f.map
    q = quotient(B2, open_cong(B2, A)).map
    d = em_diagonalize(q, q, [identity_hom(q.target)], [identity_hom(q.target)])
    assert d.map == tuple(range(q.target.size))
    assert count_diagonals(q, q, [identity_hom(q.target)], [identity_hom(q.target)]) == 1


def test_em_diagonalize_refuses_bad_top(C3):
    f = FrameHom(C3, C3, [0, 1, 2])
    with pytest.raises(ClassViolation):
        em_diagonalize(f, f, [], [FrameHom(C3, C3, [0, 2, 2])])


@given(frames)
def test_ligature_commutes(f):
    lig = ligature(f)
    assert lig.commutes and lig.lam.source.size == 1


@given(frames)
def test_scattered_atomless_parts_finite(f):
    r = scattered_atomless_parts(f)
    assert r.e == f.top
    assert r.open_part.quotient.size == f.size and r.closed_part.quotient.size == 1
    assert r.pairing_injective


def test_fat_reflection_examples(one, B2, C3):
    assert fat_reflection(one).fat
    fr = fat_reflection(B2)
    assert fr.injective and fr.fat
    # on C3, τ collapses ⊥ and m: injectivity is exactly σ(a) ∧ π(a) = a
    assert not fat_reflection(C3).injective


@given(frames)
def test_tau_injective_iff_pairing(f):
    assert fat_reflection(f).injective == pointless_spatial_pairing(f).value


def test_fat_normal_form_maxima():
    for f in CR:
        s = spatial_part(f)
        M_ = s.quotient
        p = pointless_part(M_)
        l = identity_hom(p.quotient)
        E = p.quotient
        nf = fat_normal_form(E, M_, l)
        if nf.projections_surjective:
            assert nf.checks["max"]


def test_cr_coreflection_examples(B2, C3):
    assert cr_coreflection(B2).elements == (0, 1, 2, 3)
    assert cr_coreflection(C3).elements == (BOT, TOP)


def test_cr_coreflection_matches_oracle():
    for e in SMALL:
        f = e.frame
        assert set(cr_coreflection(f).elements) == largest_cr_subframe_oracle(f), e.name
        assert set(cr_coreflection(f).elements) == set(center(f))
