"""Randomised and exhaustive checks on the line carriers and on hom pools.

Each check takes a seeded rng and an ``ops`` namespace holding the
operations under test; mutation runs swap entries of ``ops`` for broken
versions.  A check returns (Verdict, number of cases examined).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from types import SimpleNamespace

from . import attach as lw
from . import filters as flt
from . import rline
from .corpus import corpus_frames
from .frame import enumerate_homs
from .order import is_completely_regular
from .reflection import (
    SourceOfHoms,
    count_diagonals,
    em_diagonalize,
    em_factorize,
    in_M,
    is_skinny,
    prop5_sides,
    prop8_sides,
)
from .report import Verdict
from .rline import BOTTOM, TOP, IntervalOpen, io_leq, io_meet

OK = Verdict(True)


def default_ops():
    return SimpleNamespace(
        fill=rline.io_fill,
        meet=rline.io_meet,
        heyting=rline.io_heyting,
        pl_meet=rline.pl_meet,
        pl_join=rline.pl_join,
        lw_meet=lw.lw_meet,
        lw_join=lw.lw_join,
        lw_max=lw.lw_max,
        point_filter=flt.point_filter,
        em_factorize=em_factorize,
    )


# ------------------------------------------------------------------ interval carrier


def prop16_exact(rng, ops, bound=10):
    qs = rline.small_rationals(bound)
    n = 0
    for p in qs:
        for q in qs:
            r = rline.prop16_check(p, q, samples=2, join=ops.pl_join)
            n += 1
            if not r.exact_ok:
                return Verdict(False, (str(p), str(q), r.join_is_top, r.meet_is_bottom)), n
    return OK, n


def fill_nucleus_laws(rng, ops, cases=1000):
    fill = ops.fill
    for n in range(1, cases + 1):
        u, v = rline.random_open(rng), rline.random_open(rng)
        fu = fill(u)
        if not io_leq(u, fu):
            return Verdict(False, ("inflationary", str(u))), n
        if fill(fu) != fu:
            return Verdict(False, ("idempotent", str(u))), n
        if fill(io_meet(u, v)) != io_meet(fu, fill(v)):
            return Verdict(False, ("meet", str(u), str(v))), n
        w = rline.io_join(u, v)
        if not io_leq(fu, fill(w)):
            return Verdict(False, ("monotone", str(u), str(w))), n
        if not rline.is_unpunctured(fu):
            return Verdict(False, ("punctured output", str(u))), n
    return OK, cases


def heyting_adjunction(rng, ops, cases=1000):
    for n in range(1, cases + 1):
        a, b, c = (rline.random_open(rng) for _ in range(3))
        lhs = io_leq(c, ops.heyting(a, b))
        rhs = io_leq(ops.meet(a, c), b)
        if lhs != rhs:
            return Verdict(False, (str(a), str(b), str(c))), n
    return OK, cases


def grid_shapes(points=7, max_intervals=4):
    """Every unpunctured open with endpoints on 0..points-1 (ends may be infinite)."""
    ext = [rline.NEG_INF] + [Fraction(k) for k in range(points)] + [rline.INF]
    out = []
    for k in range(max_intervals + 1):
        for ends in combinations(range(len(ext)), 2 * k):
            ivs = tuple((ext[ends[i]], ext[ends[i + 1]]) for i in range(0, 2 * k, 2))
            out.append(IntervalOpen(ivs))
    return out


def pl_meet_closed(rng, ops):
    shapes = grid_shapes()
    n = 0
    for i, u in enumerate(shapes):
        for v in shapes[i:]:
            n += 1
            m = ops.pl_meet([u, v])
            if not rline.is_unpunctured(m) or m != io_meet(u, v):
                return Verdict(False, (str(u), str(v), str(m))), n
    return OK, n


# ------------------------------------------------------------------ point attachment


ATTACH_POINTS = {
    1: [Fraction(0)],
    2: [Fraction(0), Fraction(2)],
    3: [Fraction(-1), Fraction(1, 2), Fraction(3)],
    4: [Fraction(-2), Fraction(0), Fraction(1, 3), Fraction(5, 2)],
}


def _specs():
    return {k: lw.AttachmentSpec(v) for k, v in ATTACH_POINTS.items()}


def _bodies(spec, rng, n=24):
    out = [TOP, BOTTOM] + [rline.random_unpunctured(rng) for _ in range(n)]
    out += [lw.random_element(spec, rng).body for _ in range(n)]
    return out


def attach_maxima(rng, ops):
    n = 0
    for k, spec in _specs().items():
        got = ops.lw_max(spec)
        want = {lw.LWElement(spec.W - {w}, TOP) for w in spec.points}
        found = lw.maxima_by_search(spec, _bodies(spec, rng, 12))
        n += 1
        if len(got) != k or set(got) != want or set(found) != want:
            return Verdict(False, (k, [str(e) for e in got])), n
    return OK, n


def attach_closure(rng, ops, cases=1000):
    specs = list(_specs().values())
    for n in range(1, cases + 1):
        spec = rng.choice(specs)
        e1, e2 = lw.random_element(spec, rng), lw.random_element(spec, rng)
        try:
            m = ops.lw_meet(spec, e1, e2)
            j = ops.lw_join(spec, [e1, e2])
        except lw.InvariantBroken as exc:
            return Verdict(False, (str(e1), str(e2), exc.witness)), n
        if not (lw.lw_leq(m, e1) and lw.lw_leq(m, e2) and lw.lw_leq(e1, j) and lw.lw_leq(e2, j)):
            return Verdict(False, ("bounds", str(e1), str(e2))), n
        if m.flags != e1.flags & e2.flags or j.flags != e1.flags | e2.flags:
            return Verdict(False, ("flags", str(e1), str(e2))), n
    return OK, cases


def attach_atomless(rng, ops, cases=1000):
    specs = list(_specs().values())
    n = 0
    while n < cases:
        spec = rng.choice(specs)
        e = lw.random_element(spec, rng)
        if e == spec.bottom():
            continue
        n += 1
        try:
            lw.atomless_shrink(spec, e)
        except lw.HypothesisViolated as exc:
            return Verdict(False, (str(e), exc.witness)), n
    return OK, n


def attach_witnesses(rng, ops, cases=1000):
    specs = list(_specs().values())
    for n in range(1, cases + 1):
        spec = rng.choice(specs)
        Y, Z, t, c, a = lw.random_combel_case(spec, rng)
        try:
            w = lw.lw_witness_combel(spec, Y, Z, t, c, a)
            lo, hi = lw.LWElement(frozenset(Y), c), lw.LWElement(frozenset(Y), a)
            if ops.lw_meet(spec, lo, w) != spec.bottom() or ops.lw_join(spec, [hi, w]) != spec.top():
                return Verdict(False, ("witness", str(w))), n
            e = lw.random_element(spec, rng)
            v = lw.regularity_evidence(spec, e)
            if not v:
                return Verdict(False, ("regularity", str(e), v.witness)), n
        except (lw.HypothesisViolated, lw.InvariantBroken) as exc:
            return Verdict(False, (sorted(map(str, Y)), str(c), str(a), str(exc))), n
    return OK, cases


def attach_kx_coherence(rng, ops, samples=12):
    n = 0
    spec = _specs()[4]
    W = spec.points
    subsets = [frozenset(s) for k in range(1, len(W) + 1) for s in combinations(W, k)]
    elems = [lw.random_element(spec, rng) for _ in range(samples)] + [spec.top(), spec.bottom()]
    for X in subsets:
        tX, kX = lw.kx_quotient(spec, X)
        if not lw.e_morphism_evidence(spec, X):
            return Verdict(False, ("E class", sorted(map(str, X)))), n
        for e1, e2 in zip(elems, elems[1:]):
            if kX(ops.lw_meet(spec, e1, e2)) != ops.lw_meet(tX, kX(e1), kX(e2)):
                return Verdict(False, ("meet", sorted(map(str, X)), str(e1), str(e2))), n
            if kX(ops.lw_join(spec, [e1, e2])) != ops.lw_join(tX, [kX(e1), kX(e2)]):
                return Verdict(False, ("join", sorted(map(str, X)), str(e1), str(e2))), n
        for Xp in subsets:
            if not Xp <= X:
                continue
            _, kXp = lw.kx_quotient(spec, Xp)
            _, kXXp = lw.kx_quotient(tX, Xp)
            for e in elems:
                n += 1
                if kXXp(kX(e)) != kXp(e):
                    return Verdict(False, (sorted(map(str, X)), sorted(map(str, Xp)), str(e))), n
    return OK, n


def attach_prop19(rng, ops, samples=40):
    n = 0
    for spec in _specs().values():
        elems = [lw.random_element(spec, rng) for _ in range(samples)]
        try:
            rep = lw.prop19_selfcheck(spec, elems, meet=ops.lw_meet)
        except lw.InvariantBroken as exc:
            return Verdict(False, exc.witness), n
        n += rep.checked
        if not rep.ok:
            return Verdict(False, rep.failures[:1]), n
    return OK, n


# ------------------------------------------------------------------ point filters


def point_filter_challenges(rng, ops, wanted=200):
    """Distinct challenges V < ⊤ answered with validated witnesses."""
    points = [Fraction(0), Fraction(1, 3), Fraction(-2), Fraction(7, 2)]
    seen = set()
    answered = 0
    tries = 0
    while answered < wanted and tries < 20 * wanted:
        tries += 1
        x = rng.choice(points)
        V = rline.random_unpunctured(rng)
        if V == TOP or (x, V) in seen:
            continue
        seen.add((x, V))
        y = ops.point_filter(x)
        try:
            v = flt.is_regular(y, [V])
            samples = [V] if x in V else [rline.interval(x - 1, x + 1)]
            flt.is_round(y, samples)
            flt.shrink_member(y, samples[0])
        except flt.ChallengeUnanswerable:
            continue
        except flt.WitnessInvalid as exc:
            return Verdict(False, (str(x), exc.witness)), answered
        answered += v.witness
    if answered < wanted:
        return Verdict(False, ("too few challenges", answered)), answered
    return OK, answered


# ------------------------------------------------------------------ E/M machinery


def _pool_frames(max_size=8, gate_cr=False):
    """Corpus entries used as hom domains and codomains.

    Under the complete-regularity gate the pool is cut down to the frames
    meeting the hypothesis before anything is generated.
    """
    out = [e for e in corpus_frames(5) if e.size <= max_size]
    if gate_cr:
        out = [e for e in out if is_completely_regular(e.frame)]
    return out


def em_sources(rng, ops, wanted=500, gate_cr=False):
    entries = _pool_frames(gate_cr=gate_cr)
    for made in range(1, wanted + 1):
        L = rng.choice(entries).frame
        arms = []
        for _ in range(rng.randint(0, 3)):
            g = rng.choice(entries).frame
            hs = enumerate_homs(L, g, limit=12)
            if hs:
                arms.append(rng.choice(hs))
        try:
            fac = ops.em_factorize(SourceOfHoms(L, arms))
            ok = fac.e_in_E and fac.hat_in_M and all(
                h(fac.e(a)) == arm(a) for arm, h in zip(arms, fac.arms_hat) for a in L
            )
            wit = (L.size, [a.map for a in arms], fac.e_in_E, fac.hat_in_M)
        except Exception as exc:  # a refusal is a failure of the claim
            ok, wit = False, (L.size, [a.map for a in arms], repr(exc))
        if not ok:
            return Verdict(False, wit), made
    return OK, wanted


def em_squares(rng, ops, wanted=200, gate_cr=False):
    """Squares e, f over an M-source; the diagonal must exist and be unique."""
    entries = _pool_frames(6, gate_cr)
    made = tries = 0
    while made < wanted and tries < 100 * wanted:
        tries += 1
        L, K = rng.choice(entries).frame, rng.choice(entries).frame
        fs = enumerate_homs(L, K, limit=16)
        if not fs:
            continue
        f = rng.choice(fs)
        if not is_skinny(f):
            continue
        arms = []
        for _ in range(rng.randint(1, 2)):
            N = rng.choice(entries).frame
            hs = enumerate_homs(K, N, limit=12)
            if hs:
                arms.append(rng.choice(hs))
        if not arms or not in_M(SourceOfHoms(K, arms)):
            continue
        composite = SourceOfHoms(L, [f.then(m) for m in arms])
        made += 1
        try:
            fac = ops.em_factorize(composite)
            d = em_diagonalize(fac.e, f, fac.arms_hat, arms)
            count = count_diagonals(fac.e, f, fac.arms_hat, arms)
            ok = count == 1 and all(d(fac.e(a)) == f(a) for a in L)
            wit = (f.map, [m.map for m in arms], count)
        except Exception as exc:  # refusals count against the claim
            ok, wit = False, (f.map, [m.map for m in arms], repr(exc))
        if not ok:
            return Verdict(False, wit), made
    if made < wanted:
        return Verdict(False, ("too few squares", made)), made
    return OK, made


def em_biconditionals(rng, ops, gate_cr=False):
    """Both biconditionals on every hom between corpus frames of at most 8 elements."""
    entries = _pool_frames(gate_cr=gate_cr)
    n = 0
    for a in entries:
        for b in entries:
            for m in enumerate_homs(a.frame, b.frame):
                n += 1
                l8, r8 = prop8_sides(m)
                l5, r5 = prop5_sides(m)
                if l8 != r8:
                    return Verdict(False, ("Prop 8", a.name, b.name, m.map, l8, r8)), n
                if l5 != r5:
                    return Verdict(False, ("Prop 5", a.name, b.name, m.map, l5, r5)), n
    return OK, n
