"""Attaching finitely many points to the pointless line.

An element of L_W is a pair (flags, body): body an unpunctured open and
flags a set of attached points, each of which must lie in the body.  The
points are rationals; the filter attached at p is the point filter y_p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import rline
from .filters import is_round, point_filter, point_independence
from .frame import FrameError
from .report import Verdict
from .rline import BOTTOM, INF, NEG_INF, TOP, IntervalOpen, interval, io_leq, io_pseudocomplement, pl_join, pl_meet


class InvariantBroken(FrameError):
    pass


class HypothesisViolated(FrameError):
    pass


class EmptyX(FrameError):
    pass


class BadSpec(FrameError):
    pass


@dataclass(frozen=True)
class LWElement:
    flags: frozenset
    body: IntervalOpen

    def __str__(self):
        fl = ",".join(str(p) for p in sorted(self.flags))
        return f"({{{fl}}}, {self.body})"


class AttachmentSpec:
    def __init__(self, points, check_samples=16):
        pts = [Fraction(p) for p in points]
        if not pts:
            raise BadSpec("W must be nonempty")
        if len(set(pts)) != len(pts):
            raise BadSpec("attached points must be distinct", pts)
        self.points = tuple(sorted(pts))
        self.filters = {p: point_filter(p) for p in self.points}
        rng = random.Random(0)
        for p, y in self.filters.items():
            samples = [rline.interval(p - Fraction(k, 3), p + Fraction(1, k)) for k in range(1, check_samples)]
            samples += [rline.random_unpunctured(rng) for _ in range(check_samples)]
            is_round(y, samples)
        self.independence = {}
        for p, q in combinations(self.points, 2):
            u, v = point_independence(p, q)
            if not (self.filters[p].contains(u) and self.filters[q].contains(v) and pl_meet([u, v]) == BOTTOM):
                raise BadSpec("independence witness rejected", (p, q))
            self.independence[(p, q)] = (u, v)

    @property
    def W(self):
        return frozenset(self.points)

    def __repr__(self):
        return f"AttachmentSpec({[str(p) for p in self.points]})"

    def support_of(self, body):
        """W_a: the attached points lying in the body."""
        return frozenset(p for p in self.points if self.filters[p].contains(body))

    def element(self, flags, body):
        if isinstance(body, str):
            body = rline.parse(body)
        e = LWElement(frozenset(Fraction(p) for p in flags), body)
        check_element(self, e)
        return e

    def top(self):
        return LWElement(self.W, TOP)

    def bottom(self):
        return LWElement(frozenset(), BOTTOM)


def check_element(spec: AttachmentSpec, e: LWElement):
    if not rline.is_unpunctured(e.body):
        raise InvariantBroken("body is punctured", str(e))
    if not e.flags <= spec.W:
        raise InvariantBroken("flag outside W", str(e))
    if not e.flags <= spec.support_of(e.body):
        raise InvariantBroken("flagged point not in the body", str(e))


def lw_leq(e1: LWElement, e2: LWElement) -> bool:
    return e1.flags <= e2.flags and io_leq(e1.body, e2.body)


def lw_meet(spec, e1, e2) -> LWElement:
    e = LWElement(e1.flags & e2.flags, pl_meet([e1.body, e2.body]))
    check_element(spec, e)
    return e


def lw_meet_all(spec, es) -> LWElement:
    out = spec.top()
    for e in es:
        out = lw_meet(spec, out, e)
    return out


def lw_join(spec, es) -> LWElement:
    es = list(es)
    e = LWElement(frozenset().union(*(x.flags for x in es)), pl_join([x.body for x in es]))
    check_element(spec, e)
    return e


def lw_top(spec):
    return spec.top()


def lw_bottom(spec):
    return spec.bottom()


def lw_max(spec) -> list:
    return [LWElement(spec.W - {w}, TOP) for w in spec.points]


def _open_in_gap(body: IntervalOpen):
    """A bounded open interval disjoint from the closure of the body, or None if body = ⊤."""
    if body == TOP:
        return None
    if not body.intervals:
        return interval(0, 1)
    ivs = body.intervals
    if ivs[0][0] != NEG_INF:
        c = ivs[0][0]
        return interval(c - 2, c - 1)
    if ivs[-1][1] != INF:
        b = ivs[-1][1]
        return interval(b + 1, b + 2)
    for (_, b), (c, _) in zip(ivs, ivs[1:]):
        if b < c:
            d = (c - b) / 4
            return interval(b + d, c - d)
    return None  # punctured body, not a valid element


def strictly_between(spec, e: LWElement):
    """An element strictly between e and ⊤, found by enlarging the body or adding a flag."""
    g = _open_in_gap(e.body)
    if g is not None:
        cand = LWElement(e.flags, pl_join([e.body, g]))
        if cand != e and cand != spec.top():
            return cand
    for w in spec.points:
        if w in e.flags or w not in spec.support_of(e.body):
            continue
        cand = LWElement(e.flags | {w}, e.body)
        if cand != spec.top():
            return cand
    return None


def is_maximal(spec, e: LWElement) -> Verdict:
    if e == spec.top():
        return Verdict(False, "top")
    w = strictly_between(spec, e)
    return Verdict(w is None, w)


def maxima_by_search(spec, bodies):
    """Maximal elements among (Y, b) for every Y ⊆ W and the given bodies."""
    found = set()
    for b in list(bodies) + [TOP]:
        sup = spec.support_of(b)
        for k in range(len(sup) + 1):
            for Y in combinations(sorted(sup), k):
                e = LWElement(frozenset(Y), b)
                if is_maximal(spec, e):
                    found.add(e)
    return found


def lw_pi_project(spec, e: LWElement) -> LWElement:
    return LWElement(spec.support_of(e.body), e.body)


def lw_sigma_project(spec, e: LWElement) -> LWElement:
    return LWElement(e.flags, TOP)


def projections_reconstruct(spec, e) -> bool:
    """σ-image ∧ π-image gives e back."""
    return lw_meet(spec, lw_sigma_project(spec, e), lw_pi_project(spec, e)) == e


# ------------------------------------------------------------------ complete regularity witnesses


def z_prime_member(spec, Y, z) -> IntervalOpen:
    """A member b of the point filter at z with b* in every filter of Y."""
    Y = [Fraction(y) for y in Y]
    d = min([abs(z - y) for y in Y] or [Fraction(3)]) / 3
    b = interval(z - d, z + d)
    star = io_pseudocomplement(b)
    if not (spec.filters[z].contains(b) and all(spec.filters[y].contains(star) for y in Y)):
        raise HypothesisViolated("no member of z' found", (z, Y))
    return b


def lw_witness_combel(spec, Y, Z, t, c, a) -> LWElement:
    """The element (Z, c* ∨ ⋁ t(z)) separating (Y, c) from the complement of (Y, a)."""
    Y, Z = frozenset(map(Fraction, Y)), frozenset(map(Fraction, Z))
    if Y & Z or (Y | Z) != spec.W:
        raise HypothesisViolated("Y and Z do not partition W", (sorted(Y), sorted(Z)))
    for z in Z:
        b = t[z]
        if not spec.filters[z].contains(b):
            raise HypothesisViolated("t(z) is not in z", (z, str(b)))
        if not all(spec.filters[y].contains(io_pseudocomplement(b)) for y in Y):
            raise HypothesisViolated("t(z)* misses a filter of Y", (z, str(b)))
    for u in (c, a):
        if not Y <= spec.support_of(u):
            raise HypothesisViolated("c or a is not in every filter of Y", str(u))
    if not rline.io_completely_below(c, a):
        raise HypothesisViolated("c is not completely below a", (str(c), str(a)))
    bound_ = pl_meet([io_pseudocomplement(t[z]) for z in Z])
    if not io_leq(a, bound_):
        raise HypothesisViolated("a exceeds the meet of the t(z)*", str(a))
    w = LWElement(Z, pl_join([io_pseudocomplement(c)] + [t[z] for z in Z]))
    check_element(spec, w)
    lo, hi = LWElement(Y, c), LWElement(Y, a)
    check_element(spec, lo)
    check_element(spec, hi)
    if lw_meet(spec, lo, w) != spec.bottom():
        raise HypothesisViolated("witness meets (Y, c)", str(w))
    if lw_join(spec, [hi, w]) != spec.top():
        raise HypothesisViolated("witness and (Y, a) do not cover ⊤", str(w))
    return w


def _ball_union(points, radius):
    return IntervalOpen(tuple((p - radius, p + radius) for p in points))


def random_combel_case(spec, rng: random.Random):
    """A random partition, t and c ≪ a meeting the hypotheses of the witness lemma."""
    W = list(spec.points)
    k = rng.randint(0, len(W))
    Y = frozenset(rng.sample(W, k))
    Z = spec.W - Y
    t = {}
    for z in Z:
        b = z_prime_member(spec, Y, z)
        s = Fraction(rng.randint(1, 4), 4)
        lo, hi = b.intervals[0]
        t[z] = interval(z - (z - lo) * s, z + (hi - z) * s)
    # distance from Y to the closures of the t(z), and between Y points
    gaps = [Fraction(1)]
    for y in Y:
        for z in Z:
            lo, hi = t[z].intervals[0]
            gaps.append(min(abs(y - lo), abs(y - hi)))
        gaps += [abs(y - y2) / 2 for y2 in Y if y2 != y]
    r = min(gaps) / rng.randint(2, 5)
    if Y:
        a = _ball_union(sorted(Y), r)
        c = _ball_union(sorted(Y), r / rng.randint(2, 4))
    else:
        far = max([hi for z in Z for _, hi in t[z].intervals] + [Fraction(0)]) + 2
        a = interval(far, far + 1)
        c = interval(far + Fraction(1, 4), far + Fraction(3, 4))
        if rng.random() < 0.3:
            a = c = BOTTOM
    return Y, Z, t, c, a


def atomless_shrink(spec, e: LWElement) -> LWElement:
    """A nonbottom element strictly below e (e > ⊥)."""
    if e.body == BOTTOM:
        raise HypothesisViolated("element is bottom", str(e))
    lo, hi = e.body.intervals[0]
    if lo == NEG_INF and hi == INF:
        lo, hi = Fraction(0), Fraction(1)
    elif lo == NEG_INF:
        lo = hi - 1
    elif hi == INF:
        hi = lo + 1
    d = (hi - lo) / 4
    s = LWElement(frozenset(), interval(lo + d, hi - d))
    check_element(spec, s)
    if not (lw_leq(s, e) and s != e and s != spec.bottom()):
        raise HypothesisViolated("shrink did not land strictly between", (str(e), str(s)))
    return s


def regularity_family(spec, e: LWElement, depth=4):
    """Elements completely below e, built by the witness recipe, whose bodies fill out e.

    For each scale the body is a trimmed copy of e's body that still holds
    every flagged point, and t picks small members of the point filters
    outside the flags.  Returns the list of (element, witness) pairs.
    """
    Y = e.flags
    Z = spec.W - Y
    out = []
    for k in range(1, depth + 1):
        t = {}
        for z in Z:
            b = z_prime_member(spec, Y, z)
            lo, hi = b.intervals[0]
            s = Fraction(1, k + 1)
            t[z] = interval(z - (z - lo) * s, z + (hi - z) * s)
        # a = body ∧ ⋀ t(z)*: largest admissible a for this t
        a = pl_meet([e.body] + [io_pseudocomplement(t[z]) for z in Z])
        a = rline.io_fill(a)
        c = _shrink_inside(a, k, Y)
        if not Y <= spec.support_of(c):
            continue
        if not rline.io_completely_below(c, a):
            continue
        w = lw_witness_combel(spec, Y, Z, t, c, a)
        out.append((LWElement(Y, c), w))
    return out


def _shrink_inside(a: IntervalOpen, k, keep=()) -> IntervalOpen:
    """An open whose closure sits inside a and still holds the points in keep."""
    out = []
    for lo, hi in a.intervals:
        if lo == NEG_INF and hi == INF:
            out.append((NEG_INF, INF))
            continue
        inside = [p for p in keep if lo < p < hi]
        room = [p - lo for p in inside if lo != NEG_INF] + [hi - p for p in inside if hi != INF]
        if lo == NEG_INF or hi == INF:
            d = Fraction(1, k + 1)
        else:
            d = (hi - lo) / (2 * (k + 1))
        if room:
            d = min(d, min(room) / 2)
        out.append((lo if lo == NEG_INF else lo + d, hi if hi == INF else hi - d))
    return IntervalOpen(tuple(out))


def regularity_evidence(spec, e: LWElement, depth=4) -> Verdict:
    """Every family member is ≤ e, and the family bodies increase toward e's body.

    Exact recovery needs the full (infinite) family; here the check is that
    the partial join is below e, keeps e's flags and grows with depth.
    """
    fam = regularity_family(spec, e, depth)
    if e == spec.bottom():
        return Verdict(True, "bottom")
    if not fam:
        return Verdict(False, "no family member built")
    for lo, _w in fam:
        if not lw_leq(lo, e):
            return Verdict(False, str(lo))
    joins = [lw_join(spec, [x for x, _ in fam[: k + 1]]) for k in range(len(fam))]
    if not all(lw_leq(a, b) for a, b in zip(joins, joins[1:])):
        return Verdict(False, "partial joins not monotone")
    if joins[-1].flags != e.flags:
        return Verdict(False, "flags not recovered")
    return Verdict(True, len(fam))


# ------------------------------------------------------------------ quotients and the k map


def kx_quotient(spec, X):
    """(Y, a) ↦ (Y ∩ X, a) onto L_X; returns (target spec, map)."""
    X = frozenset(Fraction(x) for x in X)
    if not X:
        raise EmptyX("X must be nonempty")
    if not X <= spec.W:
        raise BadSpec("X is not a subset of W", sorted(X))
    target = AttachmentSpec(sorted(X))

    def k(e: LWElement) -> LWElement:
        out = LWElement(e.flags & X, e.body)
        check_element(target, out)
        return out

    return target, k


def restriction_map(source: AttachmentSpec, target: AttachmentSpec, r):
    """(Z, a) ↦ (r⁻¹(Z), a) from L_X to L_Y, where r sends each point of Y into X."""
    for y in target.points:
        if r(y) not in source.W:
            raise BadSpec("r leaves X", y)

    def l(e):
        out = LWElement(frozenset(y for y in target.points if r(y) in e.flags), e.body)
        check_element(target, out)
        return out

    return l


def restriction_is_skinny(source, target, r) -> Verdict:
    """Images of maximal elements have π-projection ⊤."""
    l = restriction_map(source, target, r)
    for m in lw_max(source):
        img = l(m)
        if lw_pi_project(target, img).body != TOP:
            return Verdict(False, str(m))
    return Verdict(True)


def e_morphism_evidence(spec, X) -> Verdict:
    """k_X sends maxima outside X to ⊤ and maxima inside X to maxima."""
    target, k = kx_quotient(spec, X)
    for w, m in zip(spec.points, lw_max(spec)):
        img = k(m)
        if w in target.W:
            if not is_maximal(target, img):
                return Verdict(False, (str(w), str(img)))
        elif img != target.top():
            return Verdict(False, (str(w), str(img)))
    return Verdict(True)


@dataclass
class Prop19Report:
    checked: int
    reproduced: int
    meet_preserved: bool
    top_fixed: bool
    surjectivity_hits: int
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures and self.reproduced == self.checked and self.meet_preserved and self.top_fixed


def k_map(spec, e: LWElement) -> LWElement:
    """(W_e, π(e)): flags read off from the maximal elements e is not below."""
    mx = lw_max(spec)
    We = frozenset(w for w, m in zip(spec.points, mx) if not lw_leq(e, m))
    return LWElement(We, lw_pi_project(spec, e).body)


def surjectivity_preimage(spec, target: LWElement) -> LWElement:
    """b′ = (W_b, b) ∧ ⋀ A with A the maxima whose filter holds b but is not flagged."""
    b = LWElement(spec.support_of(target.body), target.body)
    A = [m for w, m in zip(spec.points, lw_max(spec)) if w in b.flags and w not in target.flags]
    return lw_meet_all(spec, [b] + A)


def prop19_selfcheck(spec, samples, meet=None) -> Prop19Report:
    meet = meet or lw_meet
    samples = list(samples)
    rep = Prop19Report(0, 0, True, k_map(spec, spec.top()) == spec.top(), 0)
    for e in samples:
        rep.checked += 1
        if k_map(spec, e) == e:
            rep.reproduced += 1
        else:
            rep.failures.append(("k", str(e), str(k_map(spec, e))))
        if k_map(spec, surjectivity_preimage(spec, e)) == e:
            rep.surjectivity_hits += 1
        else:
            rep.failures.append(("surjectivity", str(e)))
    for e1, e2 in zip(samples, samples[1:]):
        if k_map(spec, meet(spec, e1, e2)) != meet(spec, k_map(spec, e1), k_map(spec, e2)):
            rep.meet_preserved = False
            rep.failures.append(("meet", str(e1), str(e2)))
    return rep


@dataclass
class PartialJoinReport:
    w: Fraction
    joins: list
    monotone: bool
    flags_final: frozenset
    strictly_below_top: bool
    note: str = "finite evidence only: the limit is not asserted"


def lemma32_partial_check(spec, w, n=8) -> PartialJoinReport:
    """Partial joins of (W_{b*}, b*) over members b = (w - 1/k, w + 1/k)."""
    w = Fraction(w)
    if w not in spec.W:
        raise BadSpec("w is not an attached point", w)
    gens = []
    for k in range(1, n + 1):
        b = interval(w - Fraction(1, k), w + Fraction(1, k))
        s = io_pseudocomplement(b)
        gens.append(LWElement(spec.support_of(s), s))
    joins = [lw_join(spec, gens[: k + 1]) for k in range(len(gens))]
    mono = all(lw_leq(a, b) for a, b in zip(joins, joins[1:]))
    last = joins[-1]
    return PartialJoinReport(w, joins, mono, last.flags, lw_leq(last, spec.top()) and last != spec.top())


def lemma31_decomposition(spec, e: LWElement) -> bool:
    """(Z, a) = (W_a, a) ∧ ⋀_{w ∈ W_a \\ Z} (W \\ {w}, ⊤)."""
    Wa = spec.support_of(e.body)
    mx = dict(zip(spec.points, lw_max(spec)))
    return lw_meet_all(spec, [LWElement(Wa, e.body)] + [mx[w] for w in Wa - e.flags]) == e


def lemma29_rather_below(spec, a1, a2) -> Verdict:
    """a1 ≪ a2 in E gives (W_{a1}, a1) ≺ (W_{a2}, a2) with witness (W_{a1*}, a1*)."""
    if not rline.io_completely_below(a1, a2):
        raise HypothesisViolated("a1 is not completely below a2", (str(a1), str(a2)))
    s = io_pseudocomplement(a1)
    w = LWElement(spec.support_of(s), s)
    lo = LWElement(spec.support_of(a1), a1)
    hi = LWElement(spec.support_of(a2), a2)
    ok = lw_meet(spec, lo, w) == spec.bottom() and lw_join(spec, [hi, w]) == spec.top()
    return Verdict(ok, str(w))


def support_agreement(spec, bodies) -> Verdict:
    """For each maximal (W∖{w}, ⊤), the elements not below it are those flagging w;

    on the copy of E this is membership in the point filter at w.
    """
    for w, m in zip(spec.points, lw_max(spec)):
        for b in bodies:
            e = lw_pi_project(spec, LWElement(frozenset(), b))
            in_y = not lw_leq(e, m)
            if in_y != spec.filters[w].contains(b):
                return Verdict(False, (str(w), str(b)))
    return Verdict(True)


# ------------------------------------------------------------------ random elements and JSON


def random_element(spec, rng: random.Random, **kw) -> LWElement:
    grid = kw.pop("grid", None) or sorted({Fraction(k, 4) for k in range(-12, 13)} | set(spec.points))
    body = rline.random_unpunctured(rng, grid=grid, **kw)
    if rng.random() < 0.5:
        # grow the body around a few attached points so flags become available
        pts = [p for p in spec.points if rng.random() < 0.5]
        if pts:
            body = pl_join([body, rline.io_fill(_ball_union(pts, Fraction(1, rng.randint(2, 8))))])
    sup = sorted(spec.support_of(body))
    flags = frozenset(p for p in sup if rng.random() < 0.6)
    e = LWElement(flags, body)
    check_element(spec, e)
    return e


def element_to_json(spec, e: LWElement) -> dict:
    return {"flags": sorted(spec.points.index(p) for p in e.flags), "body": str(e.body)}


def element_from_json(spec, obj) -> LWElement:
    if isinstance(obj, str):
        import json

        obj = json.loads(obj)
    return spec.element([spec.points[i] for i in obj["flags"]], obj["body"])


def parse_element(spec, text: str) -> LWElement:
    """``{0,1}:(−1,1)`` with flags given as point values, or a JSON object."""
    text = text.strip()
    if text.startswith("{\""):
        return element_from_json(spec, text)
    flags, _, body = text.partition(":")
    flags = flags.strip().strip("{}")
    pts = [Fraction(p) for p in flags.split(",") if p.strip()]
    return spec.element(pts, body)


# ------------------------------------------------------------------ the product normal form on the mixed carrier


@dataclass
class MixedFatReport:
    points: tuple
    constraint_vacuous: bool
    atom_witness: tuple  # (body, flags) of an atom of E × 2^W
    witness_is_atom: bool
    witness_in_LW: bool
    coincides_with_LW: bool
    note: str


def mixed_fat_normal_form(E, M) -> MixedFatReport:
    """Pairs over the pointless line and a finite Boolean frame 2^W.

    π of a finite frame with two or more elements is constant ⊤, so the
    pairing constraint is empty and the pair frame is the whole product,
    which is already completely regular.  Elements (⊥, {w}) are atoms of it
    and are not pairs of L_W, so the two do not coincide.
    """
    from .nucleus import pi_nucleus
    from .order import atoms, is_boolean

    if not is_boolean(M):
        raise FrameError("spatial side must be a finite Boolean frame here")
    k = len(atoms(M))
    spec = AttachmentSpec(range(k))
    vacuous = M.size == 1 or set(pi_nucleus(M).op) == {M.top}
    w = spec.points[0]
    body, flags = BOTTOM, frozenset({w})
    # anything below (⊥, {w}) in the product has body ⊥ and flags ⊆ {w}
    is_atom = body == BOTTOM and len(flags) == 1
    try:
        check_element(spec, LWElement(flags, body))
        in_lw = True
    except InvariantBroken:
        in_lw = False
    return MixedFatReport(spec.points, vacuous, (str(body), sorted(flags)), is_atom, in_lw,
                          coincides_with_LW=in_lw,
                          note="L_W is a proper subframe of E × 2^W; the product has atoms, L_W has none")
