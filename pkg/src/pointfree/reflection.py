"""Reflections and factorizations built from the σ and π nuclei."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .congruence import (
    Congruence,
    QuotientResult,
    join_or_identity,
    kernel_cong,
    nucleus_cong,
    open_cong,
    closed_cong,
    quotient,
)
from .frame import (
    FiniteFrame,
    FrameError,
    FrameHom,
    enumerate_homs,
    find_isomorphism,
    identity_hom,
    product_frame,
    subframe,
    NotASubframe,
)
from .nucleus import (
    DoesNotDrop,
    KernelNotPreserved,
    NotFactorable,
    TopConditionFails,
    drop_hom,
    factor_through_surjection,
    pi_nucleus,
    sigma_nucleus,
)
from .order import center, is_completely_regular, is_pointless, is_spatial, maxima
from .report import Verdict


class ConditionsDisagree(FrameError):
    pass


class SquareDoesNotCommute(FrameError):
    pass


class ClassViolation(FrameError):
    pass


class ProjectionsNotSurjective(FrameError):
    pass


def spatial_part(f: FiniteFrame) -> QuotientResult:
    return quotient(f, nucleus_cong(sigma_nucleus(f)))


def pointless_part(f):
    if not isinstance(f, FiniteFrame):
        return f.pointless_part()
    return quotient(f, nucleus_cong(pi_nucleus(f)))


def same_quotient(m: FrameHom, c: Congruence) -> bool:
    """m is, up to isomorphism of the codomain, the quotient map by c."""
    return m.is_surjective() and kernel_cong(m) == c


# ------------------------------------------------------------------ skinny


@dataclass
class SkinnyReport:
    kernel_into_kernel: bool
    maxima_into_kernel: bool
    drops_through_pi: bool
    unpunctured_preserved: bool

    @property
    def verdict(self):
        return self.kernel_into_kernel


def is_skinny(m: FrameHom) -> Verdict:
    """Evaluate the three equivalent skinniness conditions separately."""
    pL, pM = pi_nucleus(m.source), pi_nucleus(m.target)
    kM = pM.kernel
    c2 = all(m(a) in kM for a in pL.kernel)
    c3 = all(m(a) in kM for a in maxima(m.source))
    try:
        drop_hom(m, pL, pM)
        c4 = True
    except (KernelNotPreserved, DoesNotDrop):
        c4 = False
    c5 = all(pM(m(a)) == m(a) for a in pL.fix)
    report = SkinnyReport(c2, c3, c4, c5)
    if not (c2 == c3 == c4):
        raise ConditionsDisagree("skinniness conditions disagree", report)
    return Verdict(c2, report)


# ------------------------------------------------------------------ E / M classes


@dataclass
class SourceOfHoms:
    domain: FiniteFrame
    arms: list = field(default_factory=list)

    def __post_init__(self):
        if any(a.source is not self.domain for a in self.arms):
            raise FrameError("arms do not share the domain")


@dataclass(frozen=True)
class EMClass:
    in_E: bool
    in_M: bool


def e_bound(m: FrameHom) -> Congruence:
    L = m.source
    return join_or_identity(L, [open_cong(L, a) for a in maxima(L) if m(a) == m.target.top])


def in_E(m: FrameHom) -> bool:
    return m.is_surjective() and kernel_cong(m) <= e_bound(m)


def in_M(source) -> bool:
    if isinstance(source, FrameHom):
        source = SourceOfHoms(source.source, [source])
    return all(any(arm(a) != arm.target.top for arm in source.arms) for a in maxima(source.domain))


def em_classify(x) -> EMClass:
    if isinstance(x, FrameHom):
        return EMClass(in_E(x), in_M(x))
    return EMClass(len(x.arms) == 1 and in_E(x.arms[0]), in_M(x))


@dataclass
class EMFactorization:
    e: FrameHom
    arms_hat: list
    P: frozenset
    xi: Congruence
    e_in_E: bool
    hat_in_M: bool

    @property
    def source_hat(self):
        return SourceOfHoms(self.e.target, self.arms_hat)


def em_factorize(s: SourceOfHoms) -> EMFactorization:
    L = s.domain
    P = frozenset(a for a in maxima(L) if all(arm(a) == arm.target.top for arm in s.arms))
    xi = join_or_identity(L, [open_cong(L, a) for a in sorted(P)])
    q = quotient(L, xi)
    hats = [factor_through_surjection(q.map, arm) for arm in s.arms]
    return EMFactorization(q.map, hats, P, xi, in_E(q.map), in_M(SourceOfHoms(q.quotient, hats)))


def em_diagonalize(e: FrameHom, f: FrameHom, n_arms, m_arms) -> FrameHom:
    """Diagonal d of the square (e, f; n_arms, m_arms) with d ∘ e = f."""
    if not in_E(e):
        raise ClassViolation("top edge is not in the E class", e.map)
    if not in_M(SourceOfHoms(f.target, list(m_arms))):
        raise ClassViolation("receiving source is not in the M class")
    for n, m in zip(n_arms, m_arms):
        for a in e.source:
            if n(e(a)) != m(f(a)):
                raise SquareDoesNotCommute("square fails at", a)
    try:
        d = factor_through_surjection(e, f)
    except (TopConditionFails, NotFactorable) as exc:
        raise ClassViolation("no diagonal: f does not factor through e", exc.witness) from exc
    for n, m in zip(n_arms, m_arms):
        if any(m(d(y)) != n(y) for y in e.target):
            raise SquareDoesNotCommute("lower triangle fails")
    return d


def count_diagonals(e, f, n_arms, m_arms):
    """Exhaustive search over all homs between the middle frames."""
    count = 0
    for d in enumerate_homs(e.target, f.target):
        if all(d(e(a)) == f(a) for a in e.source) and all(
            m(d(y)) == n(y) for n, m in zip(n_arms, m_arms) for y in e.target
        ):
            count += 1
    return count


# ------------------------------------------------------------------ ligature and fat


@dataclass
class LigatureResult:
    lam: FrameHom
    pi_L: FrameHom
    sigma_L: FrameHom
    pi_sigma: FrameHom
    commutes: bool


def ligature(f: FiniteFrame) -> LigatureResult:
    pL = pointless_part(f)
    sL = spatial_part(f)
    psL = pointless_part(sL.quotient)
    via_sigma = sL.map.then(psL.map)
    lam = factor_through_surjection(pL.map, via_sigma)
    ok = all(lam(pL.map(a)) == via_sigma(a) for a in f)
    return LigatureResult(lam, pL.map, sL.map, psL.map, ok)


@dataclass
class FatNormalForm:
    pairs_frame: FiniteFrame  # L′ before the coreflection
    frame: FiniteFrame
    elements: tuple  # (a, b) for each element of frame
    to_E: FrameHom
    to_M: FrameHom
    projections_surjective: bool
    checks: dict

    def index(self, pair):
        return self.elements.index(pair)


def fat_normal_form(E, M, l, strict=False) -> FatNormalForm:
    """Pairs (a, b) with l(a) = π_M(b), then the completely regular coreflection.

    Infinite pointless carriers are dispatched to the point-attachment module.
    """
    if not isinstance(E, FiniteFrame):
        from .attach import mixed_fat_normal_form

        return mixed_fat_normal_form(E, M)
    piM = pointless_part(M)
    prod = product_frame(E, M)
    keep = [prod.pair(a, b) for a in E for b in M if l(a) == piM.map(b)]
    try:
        Lp = subframe(prod.frame, keep)
    except NotASubframe as exc:
        raise FrameError("constraint set is not a subframe", exc.witness) from exc
    cr = subframe(Lp.frame, center(Lp.frame))
    amb = [Lp.elements[k] for k in cr.elements]
    elems = tuple(prod.unpair(x) for x in amb)
    F = cr.frame
    to_E = FrameHom(F, E, [p[0] for p in elems], check=False)
    to_M = FrameHom(F, M, [p[1] for p in elems], check=False)
    surj = to_E.is_surjective() and to_M.is_surjective()
    checks = {}
    if surj:
        checks["max"] = sorted(elems[k] for k in maxima(F)) == sorted((E.top, b) for b in maxima(M))
        checks["M"] = in_M(to_M)
        checks["E"] = in_E(to_E)
        checks["square"] = all(l(to_E(x)) == piM.map(to_M(x)) for x in F)
    out = FatNormalForm(Lp.frame, F, elems, to_E, to_M, surj, checks)
    if strict and not surj:
        err = ProjectionsNotSurjective("projections of the normal form are not onto", out)
        err.result = out
        raise err
    return out


@dataclass
class FatReflection:
    tau: list  # (π(a), σ(a)) per element, in quotient ids
    injective: bool
    fat: bool
    normal_form: FatNormalForm | None


def fat_reflection(f: FiniteFrame) -> FatReflection:
    pL = pointless_part(f)
    sL = spatial_part(f)
    lig = ligature(f)
    nf = fat_normal_form(pL.quotient, sL.quotient, lig.lam)
    tau = [(pL.map(a), sL.map(a)) for a in f]
    members = set(nf.elements)
    fat = set(tau) == members
    return FatReflection(tau, len(set(tau)) == f.size, fat, nf)


# ------------------------------------------------------------------ decompositions


@dataclass
class SubdirectReport:
    e: int
    open_part: QuotientResult
    closed_part: QuotientResult
    pairing_injective: bool
    pointless_matches: bool | None


def scattered_atomless_parts(f):
    if not isinstance(f, FiniteFrame):
        return f.scattered_atomless_parts()
    e = pi_nucleus(f)(f.bottom)
    O = quotient(f, open_cong(f, e))
    C = quotient(f, closed_cong(f, e))
    inj = len({(O.map(a), C.map(a)) for a in f}) == f.size
    match = find_isomorphism(pointless_part(f).quotient, pointless_part(C.quotient).quotient) is not None
    return SubdirectReport(e, O, C, inj, match)


def pointless_spatial_pairing(f: FiniteFrame) -> Verdict:
    """Injectivity of a ↦ (π(a), σ(a)); witness is a colliding pair."""
    pi, sigma = pi_nucleus(f), sigma_nucleus(f)
    seen = {}
    for a in f:
        k = (pi(a), sigma(a))
        if k in seen:
            return Verdict(False, (seen[k], a))
        seen[k] = a
    return Verdict(True)


def cr_coreflection(f: FiniteFrame):
    return subframe(f, center(f))


def all_subframes(f: FiniteFrame):
    """Every bounded sublattice, by subset enumeration (small frames only)."""
    inner = [x for x in f if x not in (f.bottom, f.top)]
    out = []
    for r in range(len(inner) + 1):
        for extra in combinations(inner, r):
            s = {f.bottom, f.top, *extra}
            if all(f.meet[a, b] in s and f.join[a, b] in s for a in s for b in s):
                out.append(frozenset(s))
    return out


def largest_cr_subframe_oracle(f: FiniteFrame):
    """The largest completely regular subframe, or None if there is no largest."""
    good = [s for s in all_subframes(f) if is_completely_regular(subframe(f, s).frame)]
    best = [s for s in good if all(t <= s for t in good)]
    return best[0] if best else None


@dataclass
class Prop15Report:
    arrows: dict
    squares: dict

    @property
    def holds(self):
        return all(self.arrows.values()) and all(self.squares.values())


def prop15_diagram(f: FiniteFrame) -> Prop15Report:
    """Outer arrows C_e → πL and σL → O_e, and the two squares they close."""
    pL, sL = pointless_part(f), spatial_part(f)
    sa = scattered_atomless_parts(f)
    arrows = {}
    squares = {}
    try:
        top = factor_through_surjection(sa.closed_part.map, pL.map)
        arrows["C_e -> piL"] = True
        squares["pi side"] = all(top(sa.closed_part.map(a)) == pL.map(a) for a in f)
    except (TopConditionFails, NotFactorable):
        arrows["C_e -> piL"] = False
        squares["pi side"] = False
    try:
        bottom = factor_through_surjection(sL.map, sa.open_part.map)
        arrows["sigmaL -> O_e"] = True
        squares["sigma side"] = all(bottom(sL.map(a)) == sa.open_part.map(a) for a in f)
    except (TopConditionFails, NotFactorable):
        arrows["sigmaL -> O_e"] = False
        squares["sigma side"] = False
    return Prop15Report(arrows, squares)


@dataclass
class Lemma6Report:
    homs_out_pointless: bool
    m_homs_in_pointless_domain: bool
    e_homs_out_iso: bool
    pointless: bool

    @property
    def agree(self):
        return len({self.homs_out_pointless, self.m_homs_in_pointless_domain, self.e_homs_out_iso, self.pointless}) == 1


def lemma6_report(M: FiniteFrame, homs_out, homs_in) -> Lemma6Report:
    homs_out = [identity_hom(M), *homs_out]
    homs_in = [identity_hom(M), *homs_in]
    return Lemma6Report(
        all(is_pointless(h.target) for h in homs_out),
        all(is_pointless(h.source) for h in homs_in if in_M(h)),
        all(h.is_injective() for h in homs_out if in_E(h)),
        is_pointless(M),
    )


def prop8_sides(m: FrameHom):
    lhs = same_quotient(m, nucleus_cong(pi_nucleus(m.source)))
    rhs = in_E(m) and is_pointless(m.target)
    return lhs, rhs


def prop5_sides(n: FrameHom):
    lhs = same_quotient(n, nucleus_cong(sigma_nucleus(n.source)))
    rhs = n.is_surjective() and in_M(n) and is_spatial(n.target)
    return lhs, rhs
