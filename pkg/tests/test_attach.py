import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from pointfree import attach as lw
from pointfree.rline import TOP, io_leq, parse


@pytest.fixture(scope="module")
def W0():
    return lw.AttachmentSpec([0])


@pytest.fixture(scope="module")
def W01():
    return lw.AttachmentSpec([0, 1])


@pytest.fixture(scope="module")
def W02():
    return lw.AttachmentSpec([0, 2])


SPECS = {k: lw.AttachmentSpec([F(p) for p in pts]) for k, pts in
         {1: [0], 2: [0, 1], 3: [-1, F(1, 2), 3], 4: [-2, 0, F(5, 2), 4]}.items()}


def test_spec_validation():
    with pytest.raises(lw.BadSpec):
        lw.AttachmentSpec([])
    with pytest.raises(lw.BadSpec):
        lw.AttachmentSpec([1, 1])


def test_element_invariant(W0):
    with pytest.raises(lw.InvariantBroken):
        W0.element([0], "(0,2)")  # the flagged point is missing from the body
    with pytest.raises(lw.InvariantBroken):
        W0.element([], "(-1,0)u(0,1)")  # punctured body


def test_meet_join_examples(W0, W02):
    e = lw.lw_meet(W0, W0.element([0], "(-1,1)"), W0.element([0], "(-1,2)"))
    assert e == W0.element([0], "(-1,1)")
    u = W0.element([0], "(-1,1)")
    assert lw.lw_join(W0, [u, W0.bottom()]) == u
    j = lw.lw_join(W02, [W02.element([0], "(-1,1)"), W02.element([2], "(3/2,3)")])
    assert j == W02.element([0, 2], "(-1,1)u(3/2,3)")


def test_max_examples(W0, W01):
    assert lw.lw_max(W0) == [lw.LWElement(frozenset(), TOP)]
    mx = lw.lw_max(W01)
    assert sorted(sorted(m.flags) for m in mx) == [[F(0)], [F(1)]]
    assert all(m.body == TOP for m in mx)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_max_matches_search(n):
    spec = SPECS[n]
    mx = lw.lw_max(spec)
    assert len(mx) == n
    assert {m.flags for m in mx} == {spec.W - {w} for w in spec.points}
    bodies = [parse(s) for s in ("R", "(-inf,0)u(1,inf)", "(-5,5)", "(-1,1)u(2,3)")]
    assert set(lw.maxima_by_search(spec, bodies)) == set(mx)


def test_projection_examples(W0):
    e = W0.element([0], "(-1,1)")
    assert lw.lw_pi_project(W0, e) == e
    u = W0.element([], "(1,2)")
    assert lw.lw_sigma_project(W0, u) == W0.element([], "R")
    top = W0.top()
    assert lw.lw_pi_project(W0, top) == top and lw.lw_sigma_project(W0, top) == top


@given(st.integers(1, 4), st.integers(0, 10_000))
def test_projections_reconstruct(n, seed):
    spec = SPECS[n]
    e = lw.random_element(spec, random.Random(seed))
    assert lw.projections_reconstruct(spec, e)
    assert lw.lemma31_decomposition(spec, e)


def test_witness_combel_example(W02):
    t = {F(2): parse("(3/2,5/2)")}
    w = lw.lw_witness_combel(W02, [0], [2], t, parse("(-1/4,1/4)"), parse("(-1/2,1/2)"))
    assert w.flags == {F(2)}


def test_witness_combel_empty_z(W0):
    c, a = parse("(-1/4,1/4)"), parse("(-1/2,1/2)")
    w = lw.lw_witness_combel(W0, [0], [], {}, c, a)
    assert w.flags == frozenset() and w.body == lw.rline.io_pseudocomplement(c)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_z_prime_nonempty(n):
    spec = SPECS[n]
    for k in range(1, n):
        for Y in combinations(spec.points, k):
            for z in set(spec.points) - set(Y):
                b = lw.z_prime_member(spec, Y, z)
                assert spec.filters[z].contains(b)


@given(st.integers(1, 4), st.integers(0, 10_000))
def test_random_combel_cases_validate(n, seed):
    spec = SPECS[n]
    case = lw.random_combel_case(spec, random.Random(seed))
    lw.lw_witness_combel(spec, *case)


def test_kx_examples(W01):
    target, k = lw.kx_quotient(W01, [0, 1])
    e = W01.element([0], "(-1,1)")
    assert k(e) == e
    target, k = lw.kx_quotient(W01, [0])
    m0 = W01.element([0], "R")
    assert k(m0) == target.top()
    assert k(W01.element([1], "(1/2,2)")) == target.element([], "(1/2,2)")
    with pytest.raises(lw.EmptyX):
        lw.kx_quotient(W01, [])


def test_k_map_reproduces_samples(W0):
    rng = random.Random(3)
    samples = [lw.random_element(W0, rng) for _ in range(40)]
    rep = lw.prop19_selfcheck(W0, samples)
    assert rep.ok and rep.top_fixed and rep.surjectivity_hits == 40
    target = W0.element([0], "(-1,1)")
    assert lw.k_map(W0, lw.surjectivity_preimage(W0, target)) == target


def test_partial_joins_around_a_point(W01):
    r = lw.lemma32_partial_check(W01, 0, n=6)
    assert r.monotone and F(1) in r.flags_final and r.strictly_below_top
    single = lw.lemma32_partial_check(W01, 0, n=1)
    assert single.strictly_below_top
    bodies = [j.body for j in r.joins]
    assert all(io_leq(a, b) for a, b in zip(bodies, bodies[1:]))


def test_completely_below_lifts_to_rather_below(W01):
    assert lw.lemma29_rather_below(W01, parse("(0,1/2)"), parse("(-1,1)")).value


def test_json_round_trip(W01):
    e = W01.element([0, 1], "(-1,2)")
    d = lw.element_to_json(W01, e)
    assert d == {"flags": [0, 1], "body": "(-1,2)"}
    assert lw.element_from_json(W01, d) == e
    assert lw.parse_element(W01, "{0,1}:(-1,2)") == e
