"""Checks run by the suite runner, one function per claim.

Each check takes a FrameContext and returns a Verdict whose witness names
the offending elements.  Where a claim is an equivalence both sides are
computed by separate routes and compared.
"""

from __future__ import annotations

import random
from functools import cached_property

import numpy as np

from . import filters as flt
from .congruence import (
    closed_cong,
    cong_nucleus,
    enumerate_congruences,
    hom_cong,
    identity_cong,
    join_or_identity,
    maximal_elements,
    atoms_of,
    nucleus_cong,
    open_cong,
    preimage_cong,
    quotient,
)
from .frame import FiniteFrame, boolean, chain, enumerate_homs, product_frame
from .nucleus import (
    filter_nucleus,
    is_filter,
    is_normal_filter,
    iterate_prenucleus,
    lemma33_decompose,
    normal_filter_generated,
    nucleus_violation,
    pi_nucleus,
    pi_prenucleus,
    prenucleus_from_filter,
    prenucleus_violation,
    sigma_nucleus,
    top_condition,
    factor_through_surjection,
    TopConditionFails,
    NotFactorable,
)
from .order import (
    atoms,
    completely_below,
    completely_below_oracle,
    is_completely_regular,
    is_interpolative,
    is_boolean,
    is_pointless,
    is_prime,
    maxima,
    prop13_test,
    prop23_test,
)
from .reflection import (
    ConditionsDisagree,
    is_skinny,
    largest_cr_subframe_oracle,
    cr_coreflection,
    pointless_spatial_pairing,
    scattered_atomless_parts,
    spatial_part,
)
from .report import Verdict

OK = Verdict(True)

SMALL_TARGETS = (("C2", chain(2)), ("C3", chain(3)), ("B2", boolean(2)))


class FrameContext:
    """Lazily computed data shared by all claims run on one frame."""

    def __init__(self, frame: FiniteFrame, name="", seed=0):
        self.f = frame
        self.name = name
        self.seed = seed

    def rng(self, tag):
        return random.Random(f"{self.seed}:{self.name}:{tag}")

    @cached_property
    def cr(self):
        return is_completely_regular(self.f)

    @cached_property
    def maxima(self):
        return maxima(self.f)

    @cached_property
    def sigma(self):
        return sigma_nucleus(self.f)

    @cached_property
    def pi(self):
        return pi_nucleus(self.f)

    @cached_property
    def congruences(self):
        return enumerate_congruences(self.f, limit=None)

    @cached_property
    def surjections(self):
        return [quotient(self.f, c).map for c in self.congruences]

    @cached_property
    def homs(self):
        """Quotient maps plus a few homs into two- and three-element targets."""
        out = list(self.surjections)
        for _, g in SMALL_TARGETS:
            out.extend(enumerate_homs(self.f, g, limit=6))
        return out

    @cached_property
    def nuclei(self):
        rng = self.rng("nuclei")
        picks = list(self.congruences)
        rng.shuffle(picks)
        ns = [identity_cong(self.f), nucleus_cong(self.sigma), nucleus_cong(self.pi), *picks[:4]]
        seen, out = set(), []
        for c in ns:
            if c not in seen:
                seen.add(c)
                out.append(cong_nucleus(c))
        return out


def fail(*witness):
    return Verdict(False, witness if len(witness) > 1 else witness[0])


# ------------------------------------------------------------------ successors and maxima


def intervals_correspond(f, a, b):
    """c ↦ c ∨ b on [a∧b, a] and d ↦ d ∧ a on [b, a∨b] are inverse bijections."""
    lo, hi = f.meet[a, b], f.join[a, b]
    I = np.flatnonzero(f.leq[lo, :] & f.leq[:, a])
    J = np.flatnonzero(f.leq[b, :] & f.leq[:, hi])
    fwd = f.join[I, b]
    back = f.meet[J, a]
    if not np.array_equal(np.sort(fwd), J) or not np.array_equal(np.sort(back), I):
        return False
    return bool((f.meet[fwd, a] == I).all() and (f.join[back, b] == J).all())


def lemma1_intervals(ctx):
    f = ctx.f
    for a in f:
        for b in f:
            if not intervals_correspond(f, a, b):
                return fail(a, b)
    return OK


def _plus_table(f):
    return f.covers | np.eye(f.size, dtype=bool)


def lemma1_plus(ctx):
    f = ctx.f
    P = _plus_table(f)
    for b, c in np.argwhere(P):
        ok = P[f.meet[:, b], f.meet[:, c]]
        if not ok.all():
            return fail(int(np.flatnonzero(~ok)[0]), int(b), int(c))
    return OK


def lemma2_max_prime(ctx):
    f = ctx.f
    preds = set(int(x) for x in np.flatnonzero(f.covers[:, f.top]))
    # maximal computed from the order alone: below ⊤ with nothing strictly between
    lt = f.leq & ~np.eye(f.size, dtype=bool)
    mx = {a for a in f if lt[a, f.top] and not any(lt[a, c] and lt[c, f.top] for c in f)}
    pr = {a for a in f if is_prime(f, a)}
    if not preds == mx == pr:
        return fail(sorted(preds), sorted(mx), sorted(pr))
    return OK


def lemma2_atoms(ctx):
    f = ctx.f
    comps = set()
    for m in ctx.maxima:
        for c in f:
            if f.meet[m, c] == f.bottom and f.join[m, c] == f.top:
                comps.add(c)
    at = set(atoms(f))
    return OK if at == comps else fail(sorted(at), sorted(comps))


def lemma2_successor(ctx):
    f = ctx.f
    imp = f.heyting_table
    mx = np.zeros(f.size, dtype=bool)
    mx[ctx.maxima] = True
    lt = f.leq & ~np.eye(f.size, dtype=bool)
    rhs = lt.T & mx[imp]  # rhs[c, b]: c > b and c → b maximal
    lhs = f.covers.T  # lhs[c, b]: c covers b
    bad = np.argwhere(lhs != rhs)
    return OK if not len(bad) else fail(*(int(v) for v in bad[0]))


def lemma2_predecessor(ctx):
    f = ctx.f
    for a in f:
        lhs = set(int(b) for b in np.flatnonzero(f.covers[:, a]))
        rhs = {int(f.meet[a, c]) for c in ctx.maxima if not f.leq[a, c]}
        if lhs != rhs:
            return fail(a, sorted(lhs), sorted(rhs))
    return OK


def lemma2_product(ctx):
    f = ctx.f
    for tag, g in SMALL_TARGETS[:2]:
        for left_is_f in (True, False):
            M, N = (f, g) if left_is_f else (g, f)
            prod = product_frame(M, N)
            P = prod.frame
            cov = P.covers
            for a in maxima(M):
                x, t = prod.pair(a, N.bottom), prod.pair(M.top, N.bottom)
                comp = prod.pair(M.bottom, N.top)
                if not cov[x, t]:
                    return fail(tag, "cover", a)
                if P.meet[t, comp] != P.bottom or P.join[t, comp] != P.top:
                    return fail(tag, "complement", a)
                for b in N:
                    if not cov[prod.pair(a, b), prod.pair(M.top, b)]:
                        return fail(tag, "row", a, b)
    return OK


def lemma2_complemented_successor(ctx):
    f = ctx.f
    star = f.pseudocomplements
    idx = np.arange(f.size)
    for a, c in np.argwhere(f.covers):
        cs = star[c]
        if f.join[c, cs] != f.top:
            continue
        u, v = f.meet[:, c], f.meet[:, cs]
        pairs = set(zip(u.tolist(), v.tolist()))
        box = int(f.leq[:, c].sum()) * int(f.leq[:, cs].sum())
        if len(pairs) != f.size or box != f.size:
            return fail(int(a), int(c), "not a bijection")
        # componentwise preservation of both operations
        for table in (f.meet, f.join):
            img = table[idx[:, None], idx[None, :]]
            if not ((u[img] == table[u[:, None], u[None, :]]).all() and (v[img] == table[v[:, None], v[None, :]]).all()):
                return fail(int(a), int(c), "operation not preserved")
        if not (u[a] == a and v[a] == f.bottom and u[c] == c and v[c] == f.bottom):
            return fail(int(a), int(c), "successor image")
    return OK


# ------------------------------------------------------------------ homs


def lemma3_prime_pullback(ctx):
    for m in ctx.homs:
        ra = m.right_adjoint
        for b in m.target:
            if is_prime(m.target, b) and not is_prime(m.source, ra[b]):
                return fail(m.map, b)
    return OK


def lemma3_max_pullback(ctx):
    for m in ctx.surjections:
        src_max = set(maxima(m.source))
        for b in maxima(m.target):
            if m.right_adjoint[b] not in src_max:
                return fail(m.map, b)
    return OK


def lemma3_prime_image(ctx):
    for m in ctx.surjections:
        for a in m.source:
            if is_prime(m.source, a) and not (m(a) == m.target.top or is_prime(m.target, m(a))):
                return fail(m.map, a)
    return OK


def lemma4(ctx):
    f = ctx.f
    lt = f.leq & ~np.eye(f.size, dtype=bool)
    li = lt.astype(np.int32)
    # interpolative straight from the order: every a < c has some b strictly between
    interp = bool((~lt | ((li @ li) > 0)).all())
    pointless = is_pointless(f)
    if interp != pointless or interp != is_interpolative(f):
        return fail(pointless, interp)
    return OK


def _factors(m, n):
    """n = h ∘ m for some h, decided by fibres alone."""
    seen = {}
    return all(seen.setdefault(m(a), n(a)) == n(a) for a in m.source)


def lemma5(ctx):
    for m in ctx.surjections:
        for n in ctx.homs:
            ex = _factors(m, n)
            if ex != top_condition(m, n):
                return fail(m.map, n.map, ex)
            try:
                h = factor_through_surjection(m, n)
                if not ex or any(h(m(a)) != n(a) for a in m.source):
                    return fail(m.map, n.map, "factor disagrees")
            except (TopConditionFails, NotFactorable):
                if ex:
                    return fail(m.map, n.map, "refused a factorable pair")
    return OK


def lemma8(ctx):
    f = ctx.f
    for m in ctx.surjections:
        M = m.target
        parts = [open_cong(f, a) for a in f if m(a) == M.top]
        parts += [closed_cong(f, a) for a in f if m(a) == M.bottom]
        if not join_or_identity(f, parts) <= hom_cong(m):
            return fail(m.map)
    return OK


def lemma9_preimage_open(ctx):
    f = ctx.f
    for m in ctx.surjections:
        theta = hom_cong(m)
        for b in m.target:
            lhs = preimage_cong(m, open_cong(m.target, b))
            rhs = theta | open_cong(f, m.right_adjoint[b])
            if lhs != rhs:
                return fail(m.map, b)
    return OK


def lemma9_iso(ctx):
    for m in ctx.surjections:
        theta = hom_cong(m)
        con_m = enumerate_congruences(m.target, limit=None)
        images = [preimage_cong(m, d) for d in con_m]
        above = {c for c in ctx.congruences if theta <= c}
        if len(set(images)) != len(images) or set(images) != above:
            return fail(m.map, "not a bijection onto the upset")
        for i, d in enumerate(con_m):
            for j, e in enumerate(con_m):
                if (d <= e) != (images[i] <= images[j]):
                    return fail(m.map, i, j)
    return OK


def lemma10(ctx):
    f = ctx.f
    con = ctx.congruences
    psi, phi = {closed_cong(f, b) for b in ctx.maxima}, {open_cong(f, b) for b in ctx.maxima}
    mx, at = set(maximal_elements(con)), set(atoms_of(con))
    if mx != psi:
        return fail("maxima", sorted(c.classes for c in mx))
    if at != phi:
        return fail("atoms", sorted(c.classes for c in at))
    return OK


def lemma11(ctx):
    f = ctx.f
    phi = [open_cong(f, a) for a in f]
    psi = [closed_cong(f, a) for a in f]
    boxes = {(a, b): phi[a] & psi[b] for a in f for b in f.up(a)}
    for xi in ctx.congruences:
        for (a, b), box in boxes.items():
            if xi.related(a, b) != (box <= xi):
                return fail(xi.classes, a, b)
        for a in f:
            if xi.related(a, f.top) != (phi[a] <= xi):
                return fail(xi.classes, a, "top")
            if xi.related(f.bottom, a) != (psi[a] <= xi):
                return fail(xi.classes, a, "bottom")
    return OK


def lemma13(ctx):
    f, s, p = ctx.f, ctx.sigma, ctx.pi
    for a in f:
        if f.meet[s(a), p(a)] != a:
            return fail(a, s(a), p(a))
    return OK


def _drops(m, dL, dM):
    seen = {}
    return all(seen.setdefault(dL(a), dM(m(a))) == dM(m(a)) for a in m.source)


def lemma14(ctx):
    target_nuclei = {}
    for m in ctx.homs[:24]:
        M = m.target
        if id(M) not in target_nuclei:
            target_nuclei[id(M)] = [cong_nucleus(identity_cong(M)), sigma_nucleus(M), pi_nucleus(M)]
        for dL in ctx.nuclei:
            for dM in target_nuclei[id(M)]:
                kernel_ok = all(m(a) in dM.kernel for a in dL.kernel)
                if kernel_ok != _drops(m, dL, dM):
                    return fail(m.map, dL.op, dM.op)
    return OK


def lemma17_kernel_normal(ctx):
    for c in ctx.congruences:
        k = cong_nucleus(c).kernel
        if not (is_filter(ctx.f, k) and is_normal_filter(ctx.f, k)):
            return fail(c.classes)
    return OK


def lemma17_unique(ctx):
    for c in ctx.congruences:
        n = cong_nucleus(c)
        if filter_nucleus(ctx.f, n.kernel) != n:
            return fail(c.classes, sorted(n.kernel))
    return OK


def lemma18(ctx):
    for m in ctx.homs:
        try:
            is_skinny(m)
        except ConditionsDisagree as exc:
            return fail(m.map, exc.witness)
    return OK


def lemma20(ctx):
    f, s, p = ctx.f, ctx.sigma, ctx.pi
    sq = spatial_part(f)
    pq = pi_nucleus(sq.quotient)
    for a in f:
        b = sq.elements[pq(sq.map(s(a)))]
        if f.meet[p(a), s(a)] != a or f.join[p(a), s(a)] != b:
            return fail(a, "square", p(a), s(a), b)
        if not (intervals_correspond(f, p(a), s(a)) and intervals_correspond(f, s(a), p(a))):
            return fail(a, "intervals")
    return OK


def lemma33(ctx):
    for b in ctx.f:
        d = lemma33_decompose(ctx.f, b, ctx.pi)
        if not d.holds:
            return fail(b, d.pi_b, sorted(d.A))
    return OK


def prop3_fix(ctx):
    f = ctx.f
    unpunctured = {a for a in f if not f.covers[a].any()}
    fix = pi_prenucleus(f).fix
    return OK if fix == unpunctured else fail(sorted(fix), sorted(unpunctured))


def prop3_kernel(ctx):
    f = ctx.f
    ker = ctx.pi.kernel
    has_succ = f.covers.any(axis=1)
    formula = {a for a in f if all(has_succ[b] or b == f.top for b in f.up(a))}
    generated = normal_filter_generated(f, ctx.maxima)
    if not ker == formula == generated:
        return fail(sorted(ker), sorted(formula), sorted(generated))
    return OK


def prop13_23(ctx):
    f = ctx.f
    fix = ctx.pi.fix
    for a in f:
        x, y, z = prop13_test(f, a), prop23_test(f, a), a in fix
        if not x == y == z:
            return fail(a, x, y, z)
    return OK


def prop11(ctx):
    v = pointless_spatial_pairing(ctx.f)
    return v if v else fail(*v.witness)


def prop14(ctx):
    r = scattered_atomless_parts(ctx.f)
    return OK if r.pairing_injective else fail(r.e)


def cor2(ctx):
    f = ctx.f
    lhs = nucleus_cong(ctx.pi)
    rhs = join_or_identity(f, [open_cong(f, a) for a in ctx.maxima])
    return OK if lhs == rhs else fail(lhs.classes, rhs.classes)


# ------------------------------------------------------------------ nucleus engine


def _check_iteration(f, p, label):
    w = prenucleus_violation(f, p.op)
    if w is not None:
        return fail(label, "prenucleus law", w)
    n = iterate_prenucleus(p)
    if n.iterations > f.size:
        return fail(label, "iterations", n.iterations)
    w = nucleus_violation(f, n.op)
    if w is not None:
        return fail(label, "nucleus law", w)
    if n.fix != p.fix:
        return fail(label, "fix", sorted(n.fix), sorted(p.fix))
    return OK


def nucleus_filters(ctx):
    f = ctx.f
    for a in f:
        v = _check_iteration(f, prenucleus_from_filter(f, f.up(a)), f"filter ↑{a}")
        if not v:
            return v
    return OK


def nucleus_successors(ctx):
    return _check_iteration(ctx.f, pi_prenucleus(ctx.f), "successor")


# ------------------------------------------------------------------ completely below


def below_matches_oracle(ctx):
    a, b = completely_below(ctx.f).pairs, completely_below_oracle(ctx.f).pairs
    bad = np.argwhere(a != b)
    return OK if not len(bad) else fail(*(int(v) for v in bad[0]))


def below_interpolates(ctx):
    r = completely_below(ctx.f).pairs
    ri = r.astype(np.int32)
    bad = np.argwhere(r & ~((ri @ ri) > 0))
    return OK if not len(bad) else fail(*(int(v) for v in bad[0]))


def below_monotone(ctx):
    f = ctx.f
    r = completely_below(f).pairs
    L = f.leq.astype(np.int32)
    # a' ≤ a ≪ b ≤ b' gives a' ≪ b'
    closed = (L @ r.astype(np.int32) @ L) > 0
    bad = np.argwhere(closed & ~r)
    return OK if not len(bad) else fail(*(int(v) for v in bad[0]))


def cr_means_boolean(ctx):
    return OK if ctx.cr == is_boolean(ctx.f) else fail(ctx.cr)


def coreflection_matches_oracle(ctx):
    got = frozenset(cr_coreflection(ctx.f).elements)
    want = largest_cr_subframe_oracle(ctx.f)
    return OK if got == want else fail(sorted(got), None if want is None else sorted(want))


# ------------------------------------------------------------------ round filters


class FilterData:
    def __init__(self, f):
        self.f = f
        self.all = flt.enumerate_filters(f)
        self.proper = [x for x in self.all if x.proper]
        self.round = [x for x in self.all if flt.is_round(x)]
        self.maximal = flt.maximal_round_filters(self.all)
        self.ultra = flt.ultrafilters(self.all)


def _filter_data(ctx):
    if not hasattr(ctx, "_filter_data"):
        ctx._filter_data = FilterData(ctx.f)
    return ctx._filter_data


def lemma22_core(ctx):
    d = _filter_data(ctx)
    for x in d.proper:
        core = flt.round_core(x)
        if not (flt.is_round(core) and core.members <= x.members):
            return fail(sorted(x.members), "core")
        for z in d.round:
            if z.members <= x.members and not z.members <= core.members:
                return fail(sorted(x.members), sorted(z.members))
    return OK


def lemma22_maximal_criterion(ctx):
    d = _filter_data(ctx)
    maximal = {x.members for x in d.maximal}
    for x in d.round:
        if x.proper and flt.is_maximal_round(x) != (x.members in maximal):
            return fail(sorted(x.members))
    return OK


def lemma22_independent(ctx):
    d = _filter_data(ctx)
    for i, x in enumerate(d.maximal):
        for y in d.maximal[i + 1:]:
            if flt.independence_witness(x, y) is None:
                return fail(sorted(x.members), sorted(y.members))
    return OK


def lemma22_join_of_stars(ctx):
    f = ctx.f
    d = _filter_data(ctx)
    star = f.pseudocomplements
    for x in d.maximal:
        j = f.join_all(int(star[b]) for b in x.members)
        if j == f.top:
            continue
        if j not in ctx.maxima:
            return fail(sorted(x.members), j)
        if x.members != flt.x_filter(f, j).members:
            return fail(sorted(x.members), j, "not x_a")
    return OK


def lemma22_ultrafilter_cores(ctx):
    d = _filter_data(ctx)
    cores = {flt.round_core(y).members for y in d.ultra}
    maximal = {x.members for x in d.maximal}
    return OK if cores == maximal else fail(sorted(map(sorted, cores)), sorted(map(sorted, maximal)))


def _round_prime(f, x, cb):
    pairs = np.argwhere(cb)
    for a1, b1 in pairs:
        for a2, b2 in pairs:
            if f.join[a1, a2] in x.members and b1 not in x.members and b2 not in x.members:
                return False
    return True


def lemma22_primeness(ctx):
    f = ctx.f
    d = _filter_data(ctx)
    cb = completely_below(f).pairs
    maximal = {x.members for x in d.maximal}
    for x in d.round:
        if not x.proper:
            continue
        prime = _round_prime(f, x, cb)
        if x.members in maximal and not prime:
            return fail(sorted(x.members), "maximal but not prime")
        if prime and x.members not in maximal:
            return fail(sorted(x.members), "prime but not maximal")
    return OK


def lemma22_duality(ctx):
    f = ctx.f
    d = _filter_data(ctx)
    ideals = flt.round_ideals(f)
    to_ideal = {x.members: flt.round_ideal_dual(x).members for x in d.round}
    if set(to_ideal.values()) != {i.members for i in ideals}:
        return fail("filter side image", sorted(map(sorted, to_ideal.values())))
    for x in d.round:
        back = flt.round_filter_dual(flt.Ideal(f, to_ideal[x.members]))
        if back.members != x.members:
            return fail(sorted(x.members), sorted(back.members))
    for i in ideals:
        y = flt.round_filter_dual(i)
        if not flt.is_round(y) or to_ideal.get(y.members) != i.members:
            return fail("ideal", sorted(i.members))
    for x in d.round:
        for y in d.round:
            if (x.members <= y.members) != (to_ideal[x.members] <= to_ideal[y.members]):
                return fail("order", sorted(x.members), sorted(y.members))
    return OK


def lemma22_xa(ctx):
    f = ctx.f
    for a in ctx.maxima:
        r = flt.filter_of_max(f, a)
        if not (r.maximal_round and r.join_matches):
            return fail(a, r.maximal_round, r.join_of_stars)
    return OK


def lemma22_completely_prime(ctx):
    for a in ctx.maxima:
        if not flt.filter_of_max(ctx.f, a).completely_prime:
            return fail(a)
    return OK
