"""Covers, puncturedness, the below relations, regularity and the center."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .frame import FiniteFrame, Subframe, subframe
from .report import Verdict


@dataclass(frozen=True)
class CoverStructure:
    successors: tuple
    predecessors: tuple
    atoms: frozenset
    maxima: frozenset


def cover_structure(f: FiniteFrame) -> CoverStructure:
    cov = f.covers
    succ = tuple(tuple(int(x) for x in np.flatnonzero(cov[a])) for a in f)
    pred = tuple(tuple(int(x) for x in np.flatnonzero(cov[:, a])) for a in f)
    return CoverStructure(succ, pred, frozenset(succ[f.bottom]), frozenset(pred[f.top]))


def successors(f, a):
    return [int(x) for x in np.flatnonzero(f.covers[a])]


def predecessors(f, a):
    return [int(x) for x in np.flatnonzero(f.covers[:, a])]


def atoms(f):
    return successors(f, f.bottom)


def maxima(f):
    return predecessors(f, f.top)


def plus_set(f, a):
    return frozenset([a, *successors(f, a)])


def is_punctured(f: FiniteFrame, a) -> Verdict:
    """True iff a has a successor.

    The witness, when one exists, is a pair (c, b) with c maximal, b > a and
    a = c ∧ b.  Outside complete regularity a punctured element need not
    have such a witness, in which case the witness is None.
    """
    if not successors(f, a):
        return Verdict(False)
    for c in maxima(f):
        for b in f.up(a):
            if b != a and f.meet[c, b] == a:
                return Verdict(True, (c, b))
    return Verdict(True, None)


def is_prime(f, a):
    """a < ⊤ and b ∧ c ≤ a forces b ≤ a or c ≤ a."""
    if a == f.top:
        return False
    below = f.leq[:, a]
    bad = f.leq[f.meet, a] & ~below[:, None] & ~below[None, :]
    return not bad.any()


def primes(f):
    return [a for a in f if is_prime(f, a)]


def prop23_test(f: FiniteFrame, a) -> bool:
    """For all b > a there are c1, c2 with b∧c1∧c2 ≤ a but b∧c1, b∧c2 ≰ a."""
    leq, meet = f.leq, f.meet
    for b in f.up(a):
        if b == a:
            continue
        bc = meet[b]  # b ∧ c for each c
        out = ~leq[bc, a]
        both = leq[meet[bc[:, None], bc[None, :]], a]
        if not (out[:, None] & out[None, :] & both).any():
            return False
    return True


def prop13_test(f: FiniteFrame, a) -> bool:
    """Every maximal c above a has c → a = a."""
    return all(f.heyting_table[c, a] == a for c in maxima(f) if f.leq[a, c])


@dataclass(frozen=True)
class RelationTable:
    frame: FiniteFrame
    pairs: np.ndarray
    kind: str

    def __call__(self, a, b):
        return bool(self.pairs[a, b])

    def to_json(self):
        return {str(a): [int(b) for b in np.flatnonzero(self.pairs[a])] for a in self.frame}


def rather_below(f: FiniteFrame) -> RelationTable:
    cached = f._cache.get("rather_below")
    if cached is None:
        star = f.pseudocomplements
        pairs = f.join[star[:, None], np.arange(f.size)[None, :]] == f.top
        pairs.setflags(write=False)
        cached = f._cache.setdefault("rather_below", RelationTable(f, pairs, "rather-below"))
    return cached


def completely_below(f: FiniteFrame) -> RelationTable:
    """Greatest interpolative relation inside the rather-below relation."""
    cached = f._cache.get("completely_below")
    if cached is None:
        r = rather_below(f).pairs.copy()
        while True:
            ri = r.astype(np.int32)
            nxt = r & ((ri @ ri) > 0)
            if (nxt == r).all():
                break
            r = nxt
        r.setflags(write=False)
        cached = f._cache.setdefault("completely_below", RelationTable(f, r, "completely-below"))
    return cached


def completely_below_oracle(f: FiniteFrame) -> RelationTable:
    """Pairs with a complemented element between them, found by scanning."""
    comp = [c for c in f if f.join[c, f.pseudocomplements[c]] == f.top]
    pairs = np.zeros((f.size, f.size), dtype=bool)
    for a, b in product(f, f):
        pairs[a, b] = any(f.leq[a, c] and f.leq[c, b] for c in comp)
    return RelationTable(f, pairs, "completely-below")


def is_pointless(f):
    return not maxima(f)


def is_interpolative(f):
    return not f.covers.any()


def center(f: FiniteFrame):
    star = f.pseudocomplements
    return [a for a in f if f.join[a, star[a]] == f.top]


def center_subframe(f: FiniteFrame) -> Subframe:
    return subframe(f, center(f))


def is_completely_regular(f: FiniteFrame) -> bool:
    cb = completely_below(f).pairs
    return all(f.join_all(np.flatnonzero(cb[:, b]).tolist()) == b for b in f)


def is_spatial(f: FiniteFrame) -> bool:
    """Every element is the meet of the maximal elements above it."""
    mx = maxima(f)
    return all(f.meet_all(c for c in mx if f.leq[a, c]) == a for a in f)


def is_boolean(f: FiniteFrame) -> bool:
    return len(center(f)) == f.size
