"""Open subsets of the real line given as finite unions of rational intervals.

Bounds are exact ``Fraction`` values or the float infinities.  Canonical
form sorts the intervals and merges any that overlap; intervals that merely
share an endpoint stay separate, since the shared point is missing.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .frame import FrameError
from .report import Verdict

INF = float("inf")
NEG_INF = float("-inf")


class InputPunctured(FrameError):
    pass


class ParseError(FrameError):
    pass


def bound(x):
    """Coerce to an exact bound: a Fraction or ±inf."""
    if isinstance(x, float):
        if x in (INF, NEG_INF):
            return x
        raise ParseError("finite bounds must be exact rationals", x)
    if isinstance(x, str):
        s = x.strip()
        if s in ("inf", "+inf", "∞"):
            return INF
        if s in ("-inf", "−inf", "-∞"):
            return NEG_INF
        try:
            return Fraction(s.replace("−", "-"))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("bad bound", x) from exc
    return Fraction(x)


def fmt_bound(b):
    if b == INF:
        return "inf"
    if b == NEG_INF:
        return "-inf"
    return str(b)


@dataclass(frozen=True)
class IntervalOpen:
    intervals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _canonical(self.intervals))

    def __str__(self):
        if not self.intervals:
            return "empty"
        return "u".join(f"({fmt_bound(a)},{fmt_bound(b)})" for a, b in self.intervals)

    def __repr__(self):
        return f"IntervalOpen({self})"

    def __contains__(self, x):
        return any(a < x < b for a, b in self.intervals)

    def __le__(self, other):
        return io_leq(self, other)

    def __bool__(self):
        return bool(self.intervals)

    @property
    def endpoints(self):
        return sorted({e for iv in self.intervals for e in iv if e not in (INF, NEG_INF)})

    @classmethod
    def parse(cls, text):
        return parse(text)


def _canonical(intervals):
    ivs = sorted((bound(a), bound(b)) for a, b in intervals)
    out = []
    for a, b in ivs:
        if not a < b:
            continue
        if out and a < out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return tuple(out)


BOTTOM = IntervalOpen(())
TOP = IntervalOpen(((NEG_INF, INF),))

_TOKEN = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)")


def parse(text: str) -> IntervalOpen:
    """Parse ``(0,1)u(3/2,2)u(5,inf)``; ``empty`` and ``R`` name the bounds."""
    s = text.strip()
    if s in ("", "empty", "∅", "bot", "⊥"):
        return BOTTOM
    if s in ("R", "ℝ", "top", "⊤"):
        return TOP
    parts = [p for p in re.split(r"\s*[u∪]\s*(?=\()", s) if p]
    ivs = []
    for p in parts:
        m = _TOKEN.fullmatch(p.strip())
        if not m:
            raise ParseError("cannot read interval", p)
        lo, hi = bound(m.group(1)), bound(m.group(2))
        if not lo < hi:
            raise ParseError("empty interval", p)
        ivs.append((lo, hi))
    return IntervalOpen(tuple(ivs))


def interval(lo, hi) -> IntervalOpen:
    return IntervalOpen(((lo, hi),))


# ------------------------------------------------------------------ lattice operations


def io_leq(u: IntervalOpen, v: IntervalOpen) -> bool:
    return all(any(c <= a and b <= d for c, d in v.intervals) for a, b in u.intervals)


def io_join(u: IntervalOpen, v: IntervalOpen) -> IntervalOpen:
    return IntervalOpen(u.intervals + v.intervals)


def io_join_all(us) -> IntervalOpen:
    return IntervalOpen(tuple(iv for u in us for iv in u.intervals))


def io_meet(u: IntervalOpen, v: IntervalOpen) -> IntervalOpen:
    out = []
    for a, b in u.intervals:
        for c, d in v.intervals:
            lo, hi = max(a, c), min(b, d)
            if lo < hi:
                out.append((lo, hi))
    return IntervalOpen(tuple(out))


def _interior(member, points) -> IntervalOpen:
    """Interior of a set that is constant on the gaps between breakpoints."""
    pts = sorted(set(points))
    if not pts:
        return TOP if member(Fraction(0)) else BOTTOM
    samples = [pts[0] - 1] + [(a + b) / 2 for a, b in zip(pts, pts[1:])] + [pts[-1] + 1]
    seg = [member(x) for x in samples]
    edges = [NEG_INF] + pts + [INF]
    out = []
    start = None
    for k, inside in enumerate(seg):
        if inside and start is None:
            start = edges[k]
        if start is not None:
            closes = not inside or k == len(seg) - 1 or not (seg[k + 1] and member(pts[k]))
            if inside and closes:
                out.append((start, edges[k + 1]))
                start = None
            elif not inside:
                start = None
    return IntervalOpen(tuple(out))


def io_heyting(u: IntervalOpen, v: IntervalOpen) -> IntervalOpen:
    """Interior of (ℝ ∖ u) ∪ v."""
    return _interior(lambda x: x not in u or x in v, u.endpoints + v.endpoints)


def io_pseudocomplement(u: IntervalOpen) -> IntervalOpen:
    return io_heyting(u, BOTTOM)


def closure(u: IntervalOpen):
    """Closed intervals [a, b] (infinite ends allowed), merged where they touch."""
    out = []
    for a, b in u.intervals:
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def closure_complement(u: IntervalOpen) -> IntervalOpen:
    """ℝ minus the closure of u, computed from the gaps of the closure."""
    cl = closure(u)
    if not cl:
        return TOP
    gaps = []
    if cl[0][0] != NEG_INF:
        gaps.append((NEG_INF, cl[0][0]))
    gaps += [(b, c) for (_, b), (c, _) in zip(cl, cl[1:])]
    if cl[-1][1] != INF:
        gaps.append((cl[-1][1], INF))
    return IntervalOpen(tuple(gaps))


def io_completely_below(u: IntervalOpen, v: IntervalOpen) -> bool:
    """closure(u) ⊆ v."""

    def inside(a, b):
        for c, d in v.intervals:
            left = c == NEG_INF if a == NEG_INF else c < a
            right = d == INF if b == INF else b < d
            if left and right:
                return True
        return False

    return all(inside(a, b) for a, b in u.intervals)


def io_interpolate(u: IntervalOpen, v: IntervalOpen) -> IntervalOpen:
    """Some w with u ≪ w ≪ v, built from endpoint midpoints."""
    if not io_completely_below(u, v):
        raise FrameError("no interpolant: not completely below", (str(u), str(v)))
    out = []
    for a, b in u.intervals:
        c, d = next((c, d) for c, d in v.intervals if (c <= a) and (b <= d))
        lo = a if a == NEG_INF else (a - 1 if c == NEG_INF else (a + c) / 2)
        hi = b if b == INF else (b + 1 if d == INF else (b + d) / 2)
        out.append((lo, hi))
    return IntervalOpen(tuple(out))


def io_is_punctured(u: IntervalOpen) -> Verdict:
    pts = [b for (_, b), (c, _) in zip(u.intervals, u.intervals[1:]) if b == c]
    return Verdict(bool(pts), pts)


def io_successor_points(u: IntervalOpen):
    """Points p for which u ∪ {p} is open, found by probing around endpoints."""
    pts = u.endpoints
    if not pts:
        return []
    gap = min([b - a for a, b in zip(pts, pts[1:])] or [Fraction(1)])
    eps = gap / 4
    return [p for p in pts if p not in u and (p - eps) in u and (p + eps) in u]


def io_fill(u: IntervalOpen) -> IntervalOpen:
    """Merge abutting intervals: the π nucleus on representable opens."""
    out = []
    for a, b in u.intervals:
        if out and out[-1][1] == a:
            out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return IntervalOpen(tuple(out))


def is_unpunctured(u):
    return not io_is_punctured(u)


def _require_unpunctured(us):
    for u in us:
        if io_is_punctured(u):
            raise InputPunctured("pointless-fragment operation on a punctured element", str(u))


def pl_join(us) -> IntervalOpen:
    us = list(us)
    _require_unpunctured(us)
    return io_fill(io_join_all(us))


def pl_meet(us) -> IntervalOpen:
    us = list(us)
    _require_unpunctured(us)
    out = TOP
    for u in us:
        out = io_meet(out, u)
    return out


# ------------------------------------------------------------------ carriers


class RealLine:
    """Frame handle for the representable opens of ℝ."""

    name = "O(R)"
    top = TOP
    bottom = BOTTOM

    def contains(self, u):
        return isinstance(u, IntervalOpen)

    leq = staticmethod(io_leq)
    meet = staticmethod(io_meet)
    join = staticmethod(io_join)
    star = staticmethod(io_pseudocomplement)
    imp = staticmethod(io_heyting)
    completely_below = staticmethod(io_completely_below)

    def pointless_part(self):
        return PointlessQuotient(self, PointlessLine(), io_fill)

    def scattered_atomless_parts(self):
        """e = π(⊥) = ⊥: the open part is trivial and the closed part is everything."""
        e = io_fill(BOTTOM)
        return LineDecomposition(e, open_part=lambda u: io_meet(e, u), closed_part=lambda u: io_join(e, u))


class PointlessLine(RealLine):
    """Frame handle for the unpunctured opens, the pointless part of ℝ."""

    name = "piO(R)"

    def contains(self, u):
        return isinstance(u, IntervalOpen) and is_unpunctured(u)

    @staticmethod
    def join(u, v):
        return pl_join([u, v])

    @staticmethod
    def meet(u, v):
        return pl_meet([u, v])

    @staticmethod
    def star(u):
        # ℝ minus a closed set has no abutments, so the pseudocomplement agrees with 𝒪ℝ's
        return io_pseudocomplement(u)

    @staticmethod
    def imp(u, v):
        return io_fill(io_heyting(u, v))

    def pointless_part(self):
        return PointlessQuotient(self, self, lambda u: u)


@dataclass
class PointlessQuotient:
    source: RealLine
    target: RealLine
    map: object


@dataclass
class LineDecomposition:
    e: IntervalOpen
    open_part: object
    closed_part: object

    def pairing_injective_on(self, samples):
        seen = {}
        for u in samples:
            k = (self.open_part(u), self.closed_part(u))
            if seen.setdefault(k, u) != u:
                return Verdict(False, (seen[k], u))
        return Verdict(True)


# ------------------------------------------------------------------ rays and generators


def right_ray(p):
    return interval(p, INF)


def left_ray(q):
    return interval(NEG_INF, q)


@dataclass
class Prop16Report:
    p: Fraction
    q: Fraction
    join_is_top: bool
    meet_is_bottom: bool
    rel1: bool  # p ≤ q ⇒ join = ⊤
    rel1_converse: bool  # join = ⊤ ⇒ p ≤ q
    rel2: bool  # p > q ⇒ meet = ⊥
    meet_bottom_iff_p_ge_q: bool
    rel3_monotone: bool
    rel4_monotone: bool
    note: str = "relations (3) and (4): finite monotone evidence, limit semantics not asserted"

    @property
    def exact_ok(self):
        return self.rel1 and self.rel1_converse and self.rel2 and self.meet_bottom_iff_p_ge_q


def prop16_check(p, q, samples=8, join=None) -> Prop16Report:
    p, q = Fraction(p), Fraction(q)
    join = join or (lambda us: pl_join(us))
    j = join([right_ray(p), left_ray(q)])
    m = pl_meet([right_ray(p), left_ray(q)])
    jt, mb = j == TOP, m == BOTTOM
    # (3): rays from points r ↓ p; partial joins must grow and stay below the ray at p
    rs = [p + Fraction(1, k) for k in range(1, samples + 1)]
    parts = [join([right_ray(r) for r in rs[: k + 1]]) for k in range(len(rs))]
    mono3 = all(io_leq(a, b) for a, b in zip(parts, parts[1:])) and all(io_leq(x, right_ray(p)) for x in parts)
    # (4): meets of right rays shrink, joins of left rays grow
    far = [Fraction(k) for k in range(1, samples + 1)]
    meets = [pl_meet([right_ray(r) for r in far[: k + 1]]) for k in range(len(far))]
    joins = [join([left_ray(r) for r in far[: k + 1]]) for k in range(len(far))]
    mono4 = all(io_leq(b, a) for a, b in zip(meets, meets[1:])) and all(
        io_leq(a, b) for a, b in zip(joins, joins[1:])
    )
    return Prop16Report(
        p, q, jt, mb,
        rel1=(not p <= q) or jt,
        rel1_converse=(not jt) or p <= q,
        rel2=(not p > q) or mb,
        meet_bottom_iff_p_ge_q=mb == (p >= q),
        rel3_monotone=mono3,
        rel4_monotone=mono4,
    )


def small_rationals(bound_=10):
    """All rationals n/d with |n| ≤ bound and 1 ≤ d ≤ bound."""
    return sorted({Fraction(n, d) for n in range(-bound_, bound_ + 1) for d in range(1, bound_ + 1)})


# ------------------------------------------------------------------ random elements


def random_open(rng: random.Random, grid=None, max_intervals=4, unbounded=0.15):
    """A random representable open with endpoints drawn from a rational grid."""
    grid = grid or [Fraction(k, 4) for k in range(-12, 13)]
    k = rng.randint(0, max_intervals)
    pts = sorted(rng.sample(grid, min(len(grid), 2 * k)))
    ivs = []
    for a, b in zip(pts[::2], pts[1::2]):
        if rng.random() < 0.3 and ivs and ivs[-1][1] < a:
            a = ivs[-1][1]  # force an abutment now and then
        ivs.append((a, b))
    if ivs and rng.random() < unbounded:
        ivs[0] = (NEG_INF, ivs[0][1])
    if ivs and rng.random() < unbounded:
        ivs[-1] = (ivs[-1][0], INF)
    return IntervalOpen(tuple(ivs))


def random_unpunctured(rng: random.Random, **kw):
    return io_fill(random_open(rng, **kw))
