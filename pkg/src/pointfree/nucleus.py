"""Prenuclei, nuclei, kernels, normal filters and the σ and π nuclei."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .frame import FiniteFrame, FrameError, FrameHom
from .order import maxima, plus_set

SPOT_CHECK_ABOVE = 4096
SPOT_CHECK_SAMPLES = 20000


class NotAPrenucleus(FrameError):
    pass


class NotANucleus(FrameError):
    pass


class NotAFilter(FrameError):
    pass


class KernelNotPreserved(FrameError):
    pass


class DoesNotDrop(FrameError):
    """The kernel condition holds but no map between fix sets commutes."""


class TopConditionFails(FrameError):
    pass


class NotFactorable(FrameError):
    """n identifies less than m although the top condition holds."""


class NotSurjective(FrameError):
    pass


def _triples(n):
    if n <= SPOT_CHECK_ABOVE:
        return None
    rng = random.Random(n)
    return [(rng.randrange(n), rng.randrange(n)) for _ in range(SPOT_CHECK_SAMPLES)]


def prenucleus_violation(f: FiniteFrame, op):
    op = np.asarray(op)
    idx = np.arange(f.size)
    bad = np.flatnonzero(~f.leq[idx, op])
    if len(bad):
        return "not inflationary", int(bad[0])
    pairs = _triples(f.size)
    if pairs is None:
        a, b = np.meshgrid(idx, idx, indexing="ij")
    else:
        a, b = (np.array(x) for x in zip(*pairs))
    mono = ~f.leq[a, b] | f.leq[op[a], op[b]]
    if not mono.all():
        k = np.argwhere(~mono)[0]
        return "not monotone", (int(a[tuple(k)]), int(b[tuple(k)]))
    law = f.leq[f.meet[a, op[b]], op[f.meet[a, b]]]
    if not law.all():
        k = np.argwhere(~law)[0]
        return "a ∧ op(b) ≰ op(a ∧ b)", (int(a[tuple(k)]), int(b[tuple(k)]))
    return None


def nucleus_violation(f: FiniteFrame, op):
    w = prenucleus_violation(f, op)
    if w is not None:
        return w
    op = np.asarray(op)
    bad = np.flatnonzero(op[op] != op)
    if len(bad):
        return "not idempotent", int(bad[0])
    idx = np.arange(f.size)
    a, b = np.meshgrid(idx, idx, indexing="ij")
    bad = np.argwhere(op[f.meet[a, b]] != f.meet[op[a], op[b]])
    if len(bad):
        return "meets not preserved", tuple(int(v) for v in bad[0])
    return None


class Prenucleus:
    def __init__(self, frame: FiniteFrame, op, *, check=True):
        self.frame = frame
        self.op = tuple(int(x) for x in op)
        if check:
            w = prenucleus_violation(frame, self.op)
            if w is not None:
                raise NotAPrenucleus(*w)

    def __call__(self, a):
        return self.op[a]

    @property
    def fix(self):
        return frozenset(a for a in self.frame if self.op[a] == a)


class Nucleus(Prenucleus):
    iterations = 0

    def __init__(self, frame: FiniteFrame, op, *, check=True):
        super().__init__(frame, op, check=False)
        if check:
            w = nucleus_violation(frame, self.op)
            if w is not None:
                raise NotANucleus(*w)

    @property
    def kernel(self):
        return frozenset(a for a in self.frame if self.op[a] == self.frame.top)

    def __eq__(self, other):
        return isinstance(other, Nucleus) and other.frame is self.frame and other.op == self.op

    def __hash__(self):
        return hash(self.op)

    def __repr__(self):
        return f"Nucleus({list(self.op)})"

    def fix_frame(self):
        """The fixed set as a frame, with the quotient map onto it."""
        from .congruence import quotient, nucleus_cong

        return quotient(self.frame, nucleus_cong(self))


def iterate_prenucleus(p: Prenucleus) -> Nucleus:
    """Pointwise ω-iteration; converges within |L| steps on a finite frame."""
    f = p.frame
    out = []
    steps = 0
    for a in f:
        x, k = a, 0
        while p.op[x] != x:
            x = p.op[x]
            k += 1
            if k > f.size:
                raise NotAPrenucleus("iteration does not stabilise", a)
        out.append(x)
        steps = max(steps, k)
    n = Nucleus(f, out)
    n.iterations = steps
    return n


def identity_nucleus(f):
    return Nucleus(f, range(f.size), check=False)


def is_filter(f: FiniteFrame, members):
    s = set(members)
    if not s:
        return False
    if any(b not in s for a in s for b in f.up(a)):
        return False
    return all(int(f.meet[a, b]) in s for a in s for b in s)


def principal_filter(f, a):
    return frozenset(f.up(a))


def _check_filter(f, members):
    if not is_filter(f, members):
        raise NotAFilter("not a filter", sorted(members))


def prenucleus_from_filter(f: FiniteFrame, members) -> Prenucleus:
    """a ↦ ⋁_{b∈F} (b → a)."""
    _check_filter(f, members)
    imp = f.heyting_table
    op = [f.join_all(int(imp[b, a]) for b in members) for a in f]
    return Prenucleus(f, op)


def filter_nucleus(f, members) -> Nucleus:
    return iterate_prenucleus(prenucleus_from_filter(f, members))


def is_normal_filter(f: FiniteFrame, members) -> bool:
    return filter_nucleus(f, members).kernel == frozenset(members)


def normal_filter_generated(f: FiniteFrame, elems):
    """Least normal filter containing the given elements."""
    return filter_nucleus(f, principal_filter(f, f.meet_all(elems))).kernel


def sigma_nucleus(f: FiniteFrame) -> Nucleus:
    """a ↦ meet of the maximal elements above a (⊤ if there are none)."""
    mx = maxima(f)
    return Nucleus(f, [f.meet_all(c for c in mx if f.leq[a, c]) for a in f], check=f.size <= 64)


def pi_prenucleus(f: FiniteFrame) -> Prenucleus:
    return Prenucleus(f, [f.join_all(plus_set(f, a)) for a in f])


def pi_nucleus(f: FiniteFrame) -> Nucleus:
    return iterate_prenucleus(pi_prenucleus(f))


def drop_hom(m: FrameHom, nL: Nucleus, nM: Nucleus) -> FrameHom:
    """The map m̄ between fixed sets with nM ∘ m = m̄ ∘ nL."""
    for a in sorted(nL.kernel):
        if m(a) not in nM.kernel:
            raise KernelNotPreserved("kernel element leaves the kernel", a)
    src = nL.fix_frame()
    tgt = nM.fix_frame()
    lift = {}
    for a in m.source:
        y = nM(m(a))
        x = nL(a)
        if lift.setdefault(x, y) != y:
            raise DoesNotDrop("fibre of the source nucleus is split", (a, x))
    mapping = [tgt.index(lift[src.elements[k]]) for k in src.quotient]
    return FrameHom(src.quotient, tgt.quotient, mapping)


def factor_through_surjection(m: FrameHom, n: FrameHom) -> FrameHom:
    """h with n = h ∘ m, when it exists."""
    if not m.is_surjective():
        raise NotSurjective("first map must be onto", m.map)
    if m.source is not n.source:
        raise NotFactorable("maps have different sources")
    L = m.source
    for a in L:
        if m(a) == m.target.top and n(a) != n.target.top:
            raise TopConditionFails("m(a) = ⊤ but n(a) ≠ ⊤", a)
    h = {}
    for a in L:
        if h.setdefault(m(a), n(a)) != n(a):
            first = next(x for x in L if m(x) == m(a))
            raise NotFactorable("m identifies a pair that n separates", (first, a))
    return FrameHom(m.target, n.target, [h[y] for y in m.target])


def top_condition(m: FrameHom, n: FrameHom) -> bool:
    return all(n(a) == n.target.top for a in m.source if m(a) == m.target.top)


@dataclass
class Decomposition:
    b: int
    pi_b: int
    A: frozenset
    maximal_part: frozenset
    holds: bool
    holds_maximal: bool


def lemma33_decompose(f: FiniteFrame, b, pi: Nucleus | None = None) -> Decomposition:
    """Collect A′ along the π-iteration starting from {b}.

    A′(x) is the set of maximal c ≥ x with c → x > x.  The identity
    b = π(b) ∧ ⋀A(b) is evaluated both with the seed {b} and with the
    maximal elements alone.
    """
    pi = pi or pi_nucleus(f)
    step = pi_prenucleus(f)
    mx = maxima(f)
    imp = f.heyting_table
    A = {b}
    x = b
    for _ in range(f.size + 1):
        A |= {c for c in mx if f.leq[x, c] and imp[c, x] != x}
        if step(x) == x:
            break
        x = step(x)
    pb = pi(b)
    maximal = frozenset(A & set(mx))
    return Decomposition(
        b, pb, frozenset(A), maximal,
        bool(f.meet[pb, f.meet_all(A)] == b),
        bool(f.meet[pb, f.meet_all(maximal)] == b),
    )
