from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import SMALL, A, B, BOT, M, TOP
from pointfree.frame import (
    FrameHom,
    NotAHomomorphism,
    NotAPoset,
    NotDistributive,
    PosetSpec,
    boolean,
    build_frame,
    chain,
    distributivity_witness,
    downset_lattice,
    enumerate_homs,
    frame_from_json,
    frame_to_json,
    heyting,
    identity_hom,
    is_isomorphic,
    product_frame,
    pseudocomplement,
    right_adjoint,
    trivial_frame,
)

frames = st.sampled_from(SMALL).map(lambda e: e.frame)


def test_build_chain_from_covers():
    f = build_frame([(0, 1), (1, 2)], size=3)
    assert is_isomorphic(f, chain(3))


def test_build_boolean_from_covers():
    f = build_frame([(0, 1), (0, 2), (1, 3), (2, 3)], size=4)
    assert is_isomorphic(f, boolean(2))


def test_pentagon_rejected_with_valid_witness():
    # N5: 0 < 1 < 2 < 4 and 0 < 3 < 4
    covers = [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]
    with pytest.raises(NotDistributive) as exc:
        build_frame(covers, size=5)
    a, b, c = exc.value.witness
    from pointfree.frame import FiniteFrame

    f = FiniteFrame(PosetSpec(5, covers).order(), check=False)
    assert f.meet[a, f.join[b, c]] != f.join[f.meet[a, b], f.meet[a, c]]


def test_pentagon_witness_by_scan():
    leq = PosetSpec(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).order()
    from pointfree.frame import FiniteFrame

    f = FiniteFrame(leq, check=False)
    w = distributivity_witness(f)
    bad = [(a, b, c) for a, b, c in product(range(5), repeat=3)
           if f.meet[a, f.join[b, c]] != f.join[f.meet[a, b], f.meet[a, c]]]
    assert w == bad[0]


def test_cycle_rejected():
    with pytest.raises(NotAPoset):
        build_frame([(0, 1), (1, 0)], size=2)


def test_heyting_examples(C3, B2):
    assert heyting(B2, A, BOT) == B
    assert pseudocomplement(B2, A) == B
    assert heyting(C3, M, BOT) == BOT
    for f in (C3, B2):
        assert all(heyting(f, a, a) == f.top for a in f)


@given(frames)
def test_heyting_adjunction(f):
    for a, b, c in product(f, repeat=3):
        assert f.leq[f.meet[a, c], b] == f.leq[c, heyting(f, a, b)]


@given(frames)
def test_tables_are_bounds_and_distributive(f):
    for a, b in product(f, repeat=2):
        m, j = f.meet[a, b], f.join[a, b]
        lower = [c for c in f if f.leq[c, a] and f.leq[c, b]]
        upper = [c for c in f if f.leq[a, c] and f.leq[b, c]]
        assert m in lower and all(f.leq[c, m] for c in lower)
        assert j in upper and all(f.leq[j, c] for c in upper)
    assert distributivity_witness(f) is None


def test_right_adjoint_examples(C3, C2, B2):
    idm = identity_hom(C3)
    assert right_adjoint(idm) == tuple(range(3))
    m = FrameHom(C3, C2, [0, 1, 1])
    ra = right_adjoint(m)
    assert ra[0] == BOT and ra[1] == TOP
    assert all(m(ra[m(a)]) == m(a) for a in C3)
    n = FrameHom(B2, C2, [0, 1, 0, 1])
    assert right_adjoint(n)[0] == B


@given(frames, frames)
def test_right_adjoint_is_adjoint(f, g):
    for m in enumerate_homs(f, g, limit=5):
        ra = right_adjoint(m)
        for a, b in product(f, g):
            assert g.leq[m(a), b] == f.leq[a, ra[b]]


def test_downset_examples():
    assert is_isomorphic(downset_lattice(PosetSpec(2)), boolean(2))
    assert is_isomorphic(downset_lattice(PosetSpec(2, [(0, 1)])), chain(3))
    assert trivial_frame().size == 1


def test_product_examples(C3, C2, B2, one):
    assert is_isomorphic(product_frame(C2, C2).frame, B2)
    assert is_isomorphic(product_frame(C3, one).frame, C3)
    p = product_frame(C3, C2)
    top = p.frame.top
    preds = sorted(p.unpair(a) for a in p.frame if p.frame.covers[a, top])
    assert preds == [(M, 1), (TOP, 0)]


def test_product_projections_are_homs(C3, B2):
    p = product_frame(C3, B2)
    FrameHom(p.frame, C3, p.left.map)
    FrameHom(p.frame, B2, p.right.map)
    pr = p.pairing(identity_hom(C3), FrameHom(C3, B2, [0, 3, 3]))
    FrameHom(C3, p.frame, pr.map)


def test_bad_hom_rejected(C3, C2):
    with pytest.raises(NotAHomomorphism):
        FrameHom(C3, C2, [0, 0, 0])


@given(frames)
def test_json_round_trip(f):
    g = frame_from_json(frame_to_json(f))
    assert (np.asarray(g.leq) == np.asarray(f.leq)).all()
    assert g.labels == f.labels
