"""Small posets up to isomorphism and their downset frames."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .frame import FiniteFrame, PosetSpec, downset_lattice

POSET_CLASSES = {0: 1, 1: 1, 2: 2, 3: 5, 4: 16, 5: 63}  # by exact size


@dataclass(frozen=True)
class CorpusSpec:
    max_poset_size: int = 5
    include_nondistributive_rejects: bool = False


@dataclass
class CorpusEntry:
    name: str
    poset: PosetSpec
    frame: FiniteFrame

    @property
    def size(self):
        return self.frame.size


def _is_transitive(n, rel):
    for i, j in rel:
        for k in range(n):
            if (j, k) in rel and (i, k) not in rel:
                return False
    return True


def _canonical_form(n, rel):
    """Smallest strict-order bit string over all relabellings."""
    best = None
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for perm in permutations(range(n)):
        img = {(perm[i], perm[j]) for i, j in rel}
        key = tuple(p in img for p in pairs)
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def posets_of_size(n):
    """One representative strict order per isomorphism class.

    Every finite poset has a linear extension, so it suffices to scan
    relations contained in i < j, keep the transitive ones and dedupe by
    canonical form.
    """
    if n == 0:
        return (PosetSpec(0),)
    upper = [(i, j) for i, j in combinations(range(n), 2)]
    seen = {}
    for mask in range(1 << len(upper)):
        rel = {upper[k] for k in range(len(upper)) if mask >> k & 1}
        if not _is_transitive(n, rel):
            continue
        key = _canonical_form(n, rel)
        if key not in seen:
            seen[key] = PosetSpec(n, tuple(sorted(_hasse(n, rel))))
    return tuple(seen[k] for k in sorted(seen))


def _hasse(n, rel):
    return {(i, j) for i, j in rel if not any((i, k) in rel and (k, j) in rel for k in range(n))}


def generate_corpus(spec: CorpusSpec | int = 5):
    """Downset frames of all posets with at most the given number of points.

    Distinct posets give non-isomorphic downset frames, so the stream has
    one frame per poset class.  Order: by poset size, then canonical form.
    """
    if isinstance(spec, int):
        spec = CorpusSpec(spec)
    if spec.max_poset_size < 0:
        raise ValueError("bound must be at least 0")
    for n in range(spec.max_poset_size + 1):
        for k, p in enumerate(posets_of_size(n)):
            yield CorpusEntry(f"P{n}.{k}", p, downset_lattice(p))


def corpus_frames(bound=5, max_size=None):
    out = [e for e in generate_corpus(bound)]
    if max_size is not None:
        out = [e for e in out if e.size <= max_size]
    return out


def mutate_table(f: FiniteFrame, rng: random.Random, kind="join"):
    """A copy of f with one table entry corrupted (no validation)."""
    leq, meet, join = f.leq.copy(), f.meet.copy(), f.join.copy()
    n = f.size
    if n < 2:
        raise ValueError("nothing to corrupt on a one-element frame")
    a, b = rng.randrange(n), rng.randrange(n)
    if kind == "join":
        join[a, b] = join[b, a] = (join[a, b] + 1 + rng.randrange(n - 1)) % n
    elif kind == "meet":
        meet[a, b] = meet[b, a] = (meet[a, b] + 1 + rng.randrange(n - 1)) % n
    elif kind == "leq":
        a, b = f.top, f.bottom
        leq[a, b] = True
    elif kind == "swap":
        meet, join = join, meet
    else:
        raise ValueError(kind)
    return FiniteFrame.unchecked(leq, meet, join, f.labels)
