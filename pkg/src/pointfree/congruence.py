"""Frame congruences on finite frames, stored as partitions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .frame import FiniteFrame, FrameError, FrameHom
from .order import maxima

ENUMERATION_LIMIT = 12


class NotACongruence(FrameError):
    pass


class MixedFrames(FrameError):
    pass


class TooLarge(FrameError):
    pass


def _canonical(labels):
    seen = {}
    return tuple(seen.setdefault(int(x), len(seen)) for x in labels)


class Congruence:
    """An equivalence on a finite frame compatible with ∧ and ∨."""

    def __init__(self, frame: FiniteFrame, labels, *, check=True):
        self.frame = frame
        self.labels = _canonical(labels)
        if len(self.labels) != frame.size:
            raise NotACongruence("label count differs from frame size")
        if check:
            w = compatibility_violation(frame, self.labels)
            if w is not None:
                raise NotACongruence("not compatible with the operations", w)

    def __eq__(self, other):
        return isinstance(other, Congruence) and other.frame is self.frame and other.labels == self.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"Congruence({self.classes})"

    def __le__(self, other):
        self._same(other)
        lab = np.array(self.labels)
        olab = np.array(other.labels)
        same = lab[:, None] == lab[None, :]
        return bool((~same | (olab[:, None] == olab[None, :])).all())

    def __lt__(self, other):
        return self != other and self <= other

    def __and__(self, other):
        self._same(other)
        seen = {}
        lab = [seen.setdefault(p, len(seen)) for p in zip(self.labels, other.labels)]
        return Congruence(self.frame, lab, check=False)

    def __or__(self, other):
        return cong_join([self, other])

    def _same(self, other):
        if other.frame is not self.frame:
            raise MixedFrames("congruences live on different frames")

    def related(self, a, b):
        return self.labels[a] == self.labels[b]

    @property
    def classes(self):
        out = {}
        for x, k in enumerate(self.labels):
            out.setdefault(k, []).append(x)
        return [tuple(v) for v in out.values()]

    @property
    def class_tops(self):
        """The greatest element of each element's class."""
        f = self.frame
        tops = {}
        for cls in self.classes:
            t = f.join_all(cls)
            for x in cls:
                tops[x] = t
        return tuple(tops[x] for x in f)

    def is_identity(self):
        return len(set(self.labels)) == self.frame.size

    def is_total(self):
        return len(set(self.labels)) == 1


def compatibility_violation(f: FiniteFrame, labels):
    lab = np.asarray(labels)
    same = lab[:, None] == lab[None, :]
    for table in (f.meet, f.join):
        img = lab[table]  # img[x, c] = class of x ∘ c
        diff = img[:, None, :] != img[None, :, :]
        bad = np.argwhere(same[:, :, None] & diff)
        if len(bad):
            return tuple(int(v) for v in bad[0])
    return None


def _closure(f: FiniteFrame, labels):
    """Least congruence containing a given equivalence."""
    lab = np.array(_canonical(labels))
    k = int(lab.max()) + 1
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    while True:
        rep = np.zeros(k, dtype=np.int64)
        rep[lab[::-1]] = np.arange(f.size)[::-1]  # first member of each class
        r = rep[lab]
        changed = False
        for table in (f.meet, f.join):
            a = lab[table]
            b = lab[table[r]]
            for x, y in set(zip(a[a != b].tolist(), b[a != b].tolist())):
                fx, fy = find(x), find(y)
                if fx != fy:
                    parent[fx] = fy
                    changed = True
        if not changed:
            return Congruence(f, lab, check=False)
        lab = np.array(_canonical([find(x) for x in lab]))
        k = int(lab.max()) + 1
        parent = list(range(k))


def congruence_generated(f: FiniteFrame, pairs):
    parent = list(range(f.size))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return _closure(f, [find(x) for x in f])


def principal_cong(f, a, b):
    return congruence_generated(f, [(a, b)])


def identity_cong(f):
    return Congruence(f, range(f.size), check=False)


def total_cong(f):
    return Congruence(f, [0] * f.size, check=False)


def open_cong(f: FiniteFrame, a) -> Congruence:
    """Φ_a: x ~ y iff a ∧ x = a ∧ y."""
    return Congruence(f, f.meet[a], check=False)


def closed_cong(f: FiniteFrame, a) -> Congruence:
    """Ψ_a: x ~ y iff a ∨ x = a ∨ y."""
    return Congruence(f, f.join[a], check=False)


def dense_cong(f: FiniteFrame) -> Congruence:
    return Congruence(f, f.pseudocomplements, check=False)


def cong_join(congs) -> Congruence:
    congs = list(congs)
    if not congs:
        raise MixedFrames("empty join needs a frame; use identity_cong")
    f = congs[0].frame
    if any(c.frame is not f for c in congs):
        raise MixedFrames("congruences live on different frames")
    pairs = []
    for c in congs:
        for cls in c.classes:
            pairs.extend((cls[0], x) for x in cls[1:])
    return congruence_generated(f, pairs)


def join_or_identity(f, congs):
    congs = list(congs)
    return cong_join(congs) if congs else identity_cong(f)


def hom_cong(m: FrameHom) -> Congruence:
    from .nucleus import NotSurjective

    if not m.is_surjective():
        raise NotSurjective("kernel congruence requested for a non-surjective map", m.map)
    return Congruence(m.source, m.map, check=False)


def kernel_cong(m: FrameHom) -> Congruence:
    """Kernel pair of any hom (no surjectivity needed)."""
    return Congruence(m.source, m.map, check=False)


@dataclass
class QuotientResult:
    quotient: FiniteFrame
    map: FrameHom
    elements: tuple  # class top in the source for each quotient element

    def index(self, a):
        return self.elements.index(a)


def quotient(f: FiniteFrame, c: Congruence) -> QuotientResult:
    tops = c.class_tops
    elems = sorted(set(tops))
    pos = {e: k for k, e in enumerate(elems)}
    ix = np.array(elems)
    tix = np.array(tops)
    q = FiniteFrame(
        f.leq[np.ix_(ix, ix)],
        np.vectorize(pos.__getitem__)(tix[f.meet[np.ix_(ix, ix)]]),
        np.vectorize(pos.__getitem__)(tix[f.join[np.ix_(ix, ix)]]),
        [f.labels[e] for e in elems],
        check=False,
    )
    return QuotientResult(q, FrameHom(f, q, [pos[t] for t in tops], check=False), tuple(elems))


def preimage_cong(m: FrameHom, d: Congruence) -> Congruence:
    from .nucleus import NotSurjective

    if not m.is_surjective():
        raise NotSurjective("preimage along a non-surjective map", m.map)
    return Congruence(m.source, [d.labels[y] for y in m.map], check=False)


def nucleus_cong(n) -> Congruence:
    return Congruence(n.frame, n.op, check=False)


def cong_nucleus(c: Congruence):
    from .nucleus import Nucleus

    return Nucleus(c.frame, c.class_tops, check=False)


def enumerate_congruences(f: FiniteFrame, limit=ENUMERATION_LIMIT):
    """All congruences, as joins of principal congruences of covering pairs."""
    if limit is not None and f.size > limit:
        raise TooLarge(f"enumeration gated to {limit} elements", f.size)
    gens = []
    for a, b in np.argwhere(f.covers):
        g = principal_cong(f, int(a), int(b))
        if g not in gens:
            gens.append(g)
    found = {identity_cong(f)}
    frontier = list(found)
    while frontier:
        nxt = []
        for c in frontier:
            for g in gens:
                j = c if g <= c else cong_join([c, g])
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=lambda c: (len(set(c.labels)) * -1, c.labels))


def brute_force_congruences(f: FiniteFrame):
    """Every partition of the carrier that is compatible: an oracle for tiny frames."""
    n = f.size
    out = []

    def parts(k, lab, nblocks):
        if k == n:
            if compatibility_violation(f, lab) is None:
                out.append(Congruence(f, lab, check=False))
            return
        for b in range(nblocks + 1):
            lab.append(b)
            parts(k + 1, lab, max(nblocks, b + 1))
            lab.pop()

    parts(0, [], 0)
    return out


def maximal_elements(congs):
    congs = list(congs)
    return [c for c in congs if c.is_total() is False and not any(c < d and not d.is_total() for d in congs)]


def atoms_of(congs):
    congs = list(congs)
    return [c for c in congs if not c.is_identity() and not any(d < c and not d.is_identity() for d in congs)]


def max_congruences(f: FiniteFrame):
    """Maximal proper congruences: kernels of the maps onto the two-element frame.

    These correspond to prime filters, which on a finite distributive
    lattice are the principal filters of join-irreducible elements.
    """
    out = []
    for j in f:
        if j == f.bottom:
            continue
        below = [x for x in f if f.lt(x, j)]
        if f.join_all(below) == j:
            continue  # not join-irreducible
        out.append(Congruence(f, f.leq[j].astype(int), check=False))
    return out


def congruence_lattice(f: FiniteFrame, limit=ENUMERATION_LIMIT):
    """Con L as a finite frame (Hasse order by refinement), plus its members."""
    congs = enumerate_congruences(f, limit)
    n = len(congs)
    leq = np.array([[congs[i] <= congs[j] for j in range(n)] for i in range(n)])
    return FiniteFrame(leq, labels=[str(c.classes) for c in congs], check=False), congs


def lemma10_sets(f):
    mx = maxima(f)
    return {closed_cong(f, b) for b in mx}, {open_cong(f, b) for b in mx}


def pairs_of(c: Congruence):
    for cls in c.classes:
        yield from combinations(cls, 2)
