"""Round, regular and maximal round filters.

A filter is either extensional (a member set on a finite frame) or
oracular: a membership test plus witness functions, used on the real-line
carrier where members cannot be listed.  Every witness an oracle returns is
checked here before it is believed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .frame import FiniteFrame, FrameError, FrameHom
from .nucleus import is_filter, pi_nucleus
from .order import completely_below, maxima
from .report import Verdict

FILTER_ENUMERATION_LIMIT = 8


class WitnessInvalid(FrameError):
    pass


class NotMaximal(FrameError):
    pass


class ChallengeUnanswerable(FrameError):
    pass


@dataclass(frozen=True)
class Filter:
    frame: FiniteFrame
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(x) for x in self.members))
        if not is_filter(self.frame, self.members):
            raise FrameError("not a filter", sorted(self.members))

    def __contains__(self, a):
        return a in self.members

    def __repr__(self):
        return f"Filter({sorted(self.members)})"

    @property
    def proper(self):
        return self.frame.bottom not in self.members


@dataclass
class OracleFilter:
    carrier: object
    contains: object
    round_witness: object
    regular_witness: object = None
    samples: list = field(default_factory=list)
    challenges: list = field(default_factory=list)
    name: str = ""

    def __contains__(self, u):
        return self.contains(u)


def principal(f: FiniteFrame, a) -> Filter:
    return Filter(f, f.up(a))


def is_round(x, samples=None) -> Verdict:
    if isinstance(x, Filter):
        cb = completely_below(x.frame).pairs
        for a in sorted(x.members):
            if not any(cb[b, a] for b in x.members):
                return Verdict(False, a)
        return Verdict(True)
    checked = 0
    for a in samples if samples is not None else x.samples:
        if not x.contains(a):
            continue
        b = x.round_witness(a)
        if not (x.contains(b) and x.carrier.completely_below(b, a)):
            raise WitnessInvalid("round witness rejected", (str(a), str(b)))
        checked += 1
    return Verdict(True, checked)


def round_core(x: Filter) -> Filter:
    cb = completely_below(x.frame).pairs
    return Filter(x.frame, [a for a in x.members if any(cb[b, a] for b in x.members)])


def is_regular(x, challenges=None) -> Verdict:
    """Extensional: round and the pseudocomplements of members join to ⊤.

    Oracular: every challenge V < ⊤ must be answered by a member b with
    b* ≰ V; the verdict counts answered challenges and never claims more.
    """
    if isinstance(x, Filter):
        f = x.frame
        if not is_round(x):
            return Verdict(False, "not round")
        j = f.join_all(int(f.pseudocomplements[b]) for b in x.members)
        return Verdict(j == f.top, j)
    car = x.carrier
    answered = 0
    for V in challenges if challenges is not None else x.challenges:
        if car.leq(car.top, V):
            continue
        b = x.regular_witness(V)
        if not (x.contains(b) and not car.leq(car.star(b), V)):
            raise WitnessInvalid("regularity witness rejected", (str(V), str(b)))
        answered += 1
    return Verdict(True, answered)


def is_maximal_round(x: Filter) -> bool:
    """For every a ∉ x and b ≪ a some c ∈ x has b ∧ c = ⊥."""
    f = x.frame
    cb = completely_below(f).pairs
    for a in f:
        if a in x.members:
            continue
        for b in f:
            if cb[b, a] and not any(f.meet[b, c] == f.bottom for c in x.members):
                return False
    return True


def x_filter(f: FiniteFrame, a) -> Filter:
    """{b : b ≰ a}."""
    return Filter(f, [b for b in f if not f.leq[b, a]])


def is_completely_prime(x: Filter) -> bool:
    f = x.frame
    if f.bottom in x.members:
        return False
    return all(
        a in x.members or b in x.members for a in f for b in f if f.join[a, b] in x.members
    )


@dataclass
class MaxFilterReport:
    a: int
    x: Filter
    y: frozenset  # x_a within the pointless part (fixed set of π)
    maximal_round: bool
    join_of_stars: int
    join_matches: bool
    completely_prime: bool


def filter_of_max(f: FiniteFrame, a) -> MaxFilterReport:
    if a not in maxima(f):
        raise NotMaximal("element is not maximal", a)
    x = x_filter(f, a)
    fix = pi_nucleus(f).fix
    j = f.join_all(int(f.pseudocomplements[b]) for b in x.members)
    mr = bool(is_round(x)) and x.proper and is_maximal_round(x)
    return MaxFilterReport(a, x, frozenset(x.members & fix), mr, j, j == a, is_completely_prime(x))


@dataclass
class ImageReport:
    filter: Filter
    proper: bool
    proper_predicted: bool
    round: bool
    regular: bool | None


def image_filter(m: FrameHom, x: Filter) -> ImageReport:
    M = m.target
    members = {y for y in M if any(M.leq[m(a), y] for a in x.members)}
    img = Filter(M, members)
    lower_bottom = m.right_adjoint[M.bottom]
    dense = lower_bottom == m.source.bottom
    regular = bool(is_regular(img)) if dense and is_regular(x) else None
    return ImageReport(img, img.proper, lower_bottom not in x.members, bool(is_round(img)), regular)


@dataclass
class SupportFamily:
    filters: list
    labels: list
    witnesses: dict  # (i, j) -> disjoint member pair, or None when none exists

    @property
    def independent(self):
        return all(w is not None for w in self.witnesses.values())


def independence_witness(x: Filter, y: Filter):
    f = x.frame
    for a in sorted(x.members):
        for b in sorted(y.members):
            if f.meet[a, b] == f.bottom:
                return (a, b)
    return None


def spatial_support(f) -> SupportFamily:
    """The filters x_a for maximal a.

    On a finite frame with at least two elements the pointless part is
    trivial, so the filters are kept on the frame itself.
    """
    if not isinstance(f, FiniteFrame):
        return f.spatial_support()
    mx = maxima(f)
    fs = [x_filter(f, a) for a in mx]
    wit = {(i, j): independence_witness(fs[i], fs[j]) for i, j in combinations(range(len(fs)), 2)}
    return SupportFamily(fs, mx, wit)


@dataclass(frozen=True)
class Ideal:
    frame: FiniteFrame
    members: frozenset

    def __repr__(self):
        return f"Ideal({sorted(self.members)})"


def round_ideal_dual(x: Filter) -> Ideal:
    """Ideal generated by the pseudocomplements of the members."""
    f = x.frame
    top = f.join_all(int(f.pseudocomplements[a]) for a in x.members)
    return Ideal(f, frozenset(f.down(top)))


def round_filter_dual(i: Ideal) -> Filter:
    f = i.frame
    low = f.meet_all(int(f.pseudocomplements[a]) for a in i.members)
    return principal(f, low)


def is_round_ideal(i: Ideal) -> bool:
    cb = completely_below(i.frame).pairs
    return all(any(cb[a, b] for b in i.members) for a in i.members)


# ------------------------------------------------------------------ enumeration


def enumerate_filters(f: FiniteFrame, limit=FILTER_ENUMERATION_LIMIT):
    """Every filter, by scanning all subsets (the independent oracle)."""
    if limit is not None and f.size > limit:
        raise FrameError(f"filter enumeration gated to {limit} elements", f.size)
    out = []
    for mask in range(1, 1 << f.size):
        s = [x for x in f if mask >> x & 1]
        if is_filter(f, s):
            out.append(Filter(f, s))
    return out


def ultrafilters(filters):
    proper = [x for x in filters if x.proper]
    return [x for x in proper if not any(x.members < y.members for y in proper)]


def maximal_round_filters(filters):
    rnd = [x for x in filters if x.proper and is_round(x)]
    return [x for x in rnd if not any(x.members < y.members for y in rnd)]


def round_ideals(f: FiniteFrame):
    out = []
    for a in f:
        i = Ideal(f, frozenset(f.down(a)))
        if is_round_ideal(i):
            out.append(i)
    return out


# ------------------------------------------------------------------ point filters on the line


def point_filter(x, samples=None, challenges=None) -> OracleFilter:
    """y_x on the unpunctured opens: members are the unpunctured u with x ∈ u."""
    from fractions import Fraction

    from . import rline

    x = Fraction(x)
    carrier = rline.PointlessLine()

    def contains(u):
        return carrier.contains(u) and x in u

    def round_witness(u):
        lo, hi = next((a, b) for a, b in u.intervals if a < x < b)
        gaps = [d for d in (x - lo, hi - x) if d != rline.INF]
        d = min(gaps) / 2 if gaps else Fraction(1)
        return rline.interval(x - d, x + d)

    def regular_witness(V):
        z = _point_outside(V, avoid=x)
        if z is None:
            raise ChallengeUnanswerable("every point off the challenge is the filter point", str(V))
        d = abs(z - x) / 2
        return rline.interval(x - d, x + d)

    return OracleFilter(carrier, contains, round_witness, regular_witness,
                        list(samples or []), list(challenges or []), name=f"point:{x}")


def _point_outside(V, avoid):
    """A rational not in V and different from ``avoid``, or None."""
    from fractions import Fraction

    from . import rline

    if not V.intervals:
        return avoid + 1
    gaps = []
    if V.intervals[0][0] != rline.NEG_INF:
        c = V.intervals[0][0]
        gaps.append((c - 2, c))
    gaps += [(b, c) for (_, b), (c, _) in zip(V.intervals, V.intervals[1:])]
    if V.intervals[-1][1] != rline.INF:
        b = V.intervals[-1][1]
        gaps.append((b, b + 2))
    for c, d in gaps:
        for z in (c, d, (c + d) / 2, (3 * c + d) / 4):
            if z != avoid and z not in V:
                return Fraction(z)
    return None


def point_independence(x, y):
    """Disjoint members of y_x and y_y for distinct points."""
    from fractions import Fraction

    from . import rline

    x, y = Fraction(x), Fraction(y)
    if x == y:
        return None
    d = abs(x - y) / 3
    return rline.interval(x - d, x + d), rline.interval(y - d, y + d)


def shrink_member(x: OracleFilter, u):
    """A member strictly below u: evidence that no least member exists."""
    b = x.round_witness(u)
    if not (x.contains(b) and x.carrier.leq(b, u) and b != u):
        raise WitnessInvalid("shrink witness rejected", (str(u), str(b)))
    return b
