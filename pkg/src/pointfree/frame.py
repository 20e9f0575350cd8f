"""Finite frames: bounded distributive lattices stored as explicit tables.

Elements are dense integer ids.  Every frame keeps a boolean order table and
integer meet/join tables; everything else (covers, Heyting implication,
pseudocomplements) is derived lazily and cached on the instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class FrameError(ValueError):
    """Base class for construction and validation failures."""

    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message}: {witness!r}")
        self.witness = witness


class NotAPoset(FrameError):
    pass


class NotALattice(FrameError):
    pass


class NotDistributive(FrameError):
    pass


class NotAHomomorphism(FrameError):
    pass


class NotASubframe(FrameError):
    pass


def _freeze(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def transitive_closure(rel):
    """Reflexive transitive closure of a boolean relation matrix."""
    r = np.array(rel, dtype=bool) | np.eye(len(rel), dtype=bool)
    while True:
        nxt = r | ((r.astype(np.int32) @ r.astype(np.int32)) > 0)
        if (nxt == r).all():
            return nxt
        r = nxt


def _bounds_tables(leq):
    """Meet and join tables of a partial order, or raise NotALattice."""
    li = leq.astype(np.int32)
    # lower[a, b, x]: x is a lower bound of a and b
    lower = leq.T[:, None, :] & leq.T[None, :, :]
    upper = leq[:, None, :] & leq[None, :, :]
    n_lower = lower.sum(axis=2)
    n_upper = upper.sum(axis=2)
    # x is the greatest lower bound if every lower bound lies below it
    below_x = np.einsum("aby,yx->abx", lower.astype(np.int32), li)
    glb = lower & (below_x == n_lower[:, :, None])
    above_x = np.einsum("aby,xy->abx", upper.astype(np.int32), li)
    lub = upper & (above_x == n_upper[:, :, None])
    for name, table in (("meet", glb), ("join", lub)):
        missing = np.argwhere(table.sum(axis=2) != 1)
        if len(missing):
            a, b = (int(v) for v in missing[0])
            raise NotALattice(f"pair has no {name}", (a, b))
    return glb.argmax(axis=2), lub.argmax(axis=2)


class FiniteFrame:
    """A finite distributive lattice, hence a frame.

    Construct with just ``leq`` to have meets and joins computed, or pass
    all three tables (as quotient constructions do).  ``check=False`` skips
    validation entirely; it exists so that tests can build deliberately
    corrupted frames.
    """

    def __init__(self, leq, meet=None, join=None, labels=None, *, check=True):
        leq = np.array(leq, dtype=bool)
        n = len(leq)
        if n == 0 or leq.shape != (n, n):
            raise NotAPoset("order table must be a non-empty square matrix")
        if check:
            _check_partial_order(leq)
        if meet is None or join is None:
            meet, join = _bounds_tables(leq)
        self.leq = _freeze(leq)
        self.meet = _freeze(np.array(meet, dtype=np.int64))
        self.join = _freeze(np.array(join, dtype=np.int64))
        below = leq.sum(axis=0)
        self.bottom = int(np.argmin(below))
        self.top = int(np.argmax(below))
        if labels is None:
            labels = [str(i) for i in range(n)]
        self.labels = tuple(str(s) for s in labels)
        self._cache = {}
        if check:
            self.validate()

    @classmethod
    def unchecked(cls, leq, meet, join, labels=None):
        return cls(leq, meet, join, labels, check=False)

    @property
    def size(self):
        return len(self.leq)

    def __len__(self):
        return len(self.leq)

    def __iter__(self):
        return iter(range(len(self.leq)))

    def __repr__(self):
        return f"FiniteFrame(size={self.size})"

    def validate(self):
        n = self.size
        leq, meet, join = self.leq, self.meet, self.join
        if not leq[self.bottom].all():
            raise NotALattice("no least element")
        if not leq[:, self.top].all():
            raise NotALattice("no greatest element")
        idx = np.arange(n)
        a, b = np.meshgrid(idx, idx, indexing="ij")
        # meet is a lower bound and above every common lower bound
        ok = leq[meet, a] & leq[meet, b]
        lower = leq.T[:, None, :] & leq.T[None, :, :]
        ok &= ~(lower & ~leq[:, meet].transpose(1, 2, 0)).any(axis=2)
        bad = np.argwhere(~ok)
        if len(bad):
            raise NotALattice("meet table is not a greatest lower bound", tuple(int(v) for v in bad[0]))
        ok = leq[a, join] & leq[b, join]
        upper = leq[:, None, :] & leq[None, :, :]
        ok &= ~(upper & ~leq[join, :]).any(axis=2)
        bad = np.argwhere(~ok)
        if len(bad):
            raise NotALattice("join table is not a least upper bound", tuple(int(v) for v in bad[0]))
        witness = distributivity_witness(self)
        if witness is not None:
            raise NotDistributive("distributive law fails", witness)

    def le(self, a, b):
        return bool(self.leq[a, b])

    def lt(self, a, b):
        return a != b and bool(self.leq[a, b])

    def meet_all(self, elems: Iterable[int]):
        acc = self.top
        for e in elems:
            acc = int(self.meet[acc, e])
        return acc

    def join_all(self, elems: Iterable[int]):
        acc = self.bottom
        for e in elems:
            acc = int(self.join[acc, e])
        return acc

    def up(self, a):
        return [int(x) for x in np.flatnonzero(self.leq[a])]

    def down(self, a):
        return [int(x) for x in np.flatnonzero(self.leq[:, a])]

    @cached_property
    def covers(self):
        """Boolean table: covers[a, b] iff b covers a."""
        lt = self.leq & ~np.eye(self.size, dtype=bool)
        li = lt.astype(np.int32)
        return _freeze(lt & ~((li @ li) > 0))

    @cached_property
    def heyting_table(self):
        n = self.size
        ok = self.leq[self.meet, :]  # ok[a, c, b]: a∧c ≤ b
        acc = np.full((n, n), self.bottom, dtype=np.int64)
        for c in range(n):
            acc = np.where(ok[:, c, :], self.join[acc, c], acc)
        return _freeze(acc)

    @cached_property
    def pseudocomplements(self):
        return _freeze(self.heyting_table[:, self.bottom].copy())

    @cached_property
    def rank(self):
        """Length of the longest chain from bottom to each element."""
        order = sorted(self, key=lambda x: int(self.leq[:, x].sum()))
        r = [0] * self.size
        cov = self.covers
        for x in order:
            for y in np.flatnonzero(cov[x]):
                r[y] = max(r[y], r[x] + 1)
        return tuple(r)

    def label(self, a):
        return self.labels[a]


def _check_partial_order(leq):
    n = len(leq)
    if not leq.diagonal().all():
        raise NotAPoset("order is not reflexive")
    anti = leq & leq.T & ~np.eye(n, dtype=bool)
    if anti.any():
        raise NotAPoset("order is not antisymmetric", tuple(int(v) for v in np.argwhere(anti)[0]))
    li = leq.astype(np.int32)
    trans = ((li @ li) > 0) & ~leq
    if trans.any():
        raise NotAPoset("order is not transitive", tuple(int(v) for v in np.argwhere(trans)[0]))


def distributivity_witness(f):
    """First triple (a, b, c) with a∧(b∨c) ≠ (a∧b)∨(a∧c), or None."""
    m, j = f.meet, f.join
    lhs = m[:, j]  # lhs[a, b, c] = a ∧ (b ∨ c)
    ab = m[:, :, None].repeat(f.size, axis=2)
    ac = m[:, None, :].repeat(f.size, axis=1)
    rhs = j[ab, ac]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def heyting(f: FiniteFrame, a, b):
    """a → b, the largest c with a ∧ c ≤ b."""
    return int(f.heyting_table[a, b])


def pseudocomplement(f: FiniteFrame, a):
    return int(f.pseudocomplements[a])


@dataclass(frozen=True)
class PosetSpec:
    """A finite poset given by a generating strict relation (usually covers)."""

    size: int
    covers: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "covers", tuple(tuple(int(x) for x in p) for p in self.covers))
        for i, j in self.covers:
            if not (0 <= i < self.size and 0 <= j < self.size):
                raise NotAPoset("cover refers to a missing element", (i, j))

    def order(self):
        rel = np.zeros((self.size, self.size), dtype=bool)
        for i, j in self.covers:
            rel[i, j] = True
        leq = transitive_closure(rel) if self.size else rel
        if self.size:
            cyc = leq & leq.T & ~np.eye(self.size, dtype=bool)
            if cyc.any():
                raise NotAPoset("relation has a cycle", tuple(int(v) for v in np.argwhere(cyc)[0]))
        return leq


def build_frame(spec: PosetSpec | Sequence, size=None, labels=None) -> FiniteFrame:
    """Build and validate a frame from the covering relation of a lattice."""
    if not isinstance(spec, PosetSpec):
        spec = PosetSpec(size, tuple(spec))
    leq = spec.order()
    if spec.size == 0:
        raise NotALattice("a lattice needs at least one element")
    return FiniteFrame(leq, labels=labels)


def downset_lattice(p: PosetSpec) -> FiniteFrame:
    """Frame of downsets of a finite poset, ordered by inclusion."""
    leq = p.order()
    n = p.size
    below = [sum(1 << j for j in range(n) if leq[j, i]) for i in range(n)]
    downs = [s for s in range(1 << n) if all(below[i] & s == below[i] for i in range(n) if s >> i & 1)]
    downs.sort(key=lambda s: (bin(s).count("1"), s))
    index = {s: k for k, s in enumerate(downs)}
    k = len(downs)
    arr = np.array(downs)
    meet = np.vectorize(index.__getitem__)(arr[:, None] & arr[None, :]) if k > 1 else np.zeros((1, 1), int)
    join = np.vectorize(index.__getitem__)(arr[:, None] | arr[None, :]) if k > 1 else np.zeros((1, 1), int)
    order = (arr[:, None] & arr[None, :]) == arr[:, None]
    labels = ["{" + ",".join(str(i) for i in range(n) if s >> i & 1) + "}" if s else "∅" for s in downs]
    return FiniteFrame(order, meet, join, labels, check=False)


def chain(n) -> FiniteFrame:
    """The n-element chain (n ≥ 1)."""
    return downset_lattice(PosetSpec(n - 1, [(i, i + 1) for i in range(n - 2)]))


def boolean(k) -> FiniteFrame:
    """The Boolean frame with 2**k elements."""
    return downset_lattice(PosetSpec(k))


def trivial_frame() -> FiniteFrame:
    return downset_lattice(PosetSpec(0))


class FrameHom:
    """A frame homomorphism between finite frames, stored as its value table."""

    def __init__(self, source: FiniteFrame, target: FiniteFrame, mapping, *, check=True):
        self.source = source
        self.target = target
        self.map = tuple(int(x) for x in mapping)
        if len(self.map) != source.size:
            raise NotAHomomorphism("map length differs from source size")
        if check:
            w = hom_violation(source, target, self.map)
            if w is not None:
                raise NotAHomomorphism(w[0], w[1])

    def __call__(self, a):
        return self.map[a]

    def __repr__(self):
        return f"FrameHom({self.source.size}->{self.target.size}, {list(self.map)})"

    @property
    def image(self):
        return sorted(set(self.map))

    def is_surjective(self):
        return len(set(self.map)) == self.target.size

    def is_injective(self):
        return len(set(self.map)) == self.source.size

    def then(self, other: "FrameHom") -> "FrameHom":
        """Composite ``other ∘ self``."""
        if other.source is not self.target:
            raise NotAHomomorphism("composition of non-adjacent homs")
        return FrameHom(self.source, other.target, [other.map[x] for x in self.map], check=False)

    @cached_property
    def right_adjoint(self):
        return right_adjoint(self)


def compose(outer: FrameHom, inner: FrameHom) -> FrameHom:
    return inner.then(outer)


def hom_violation(source, target, mapping):
    """Describe the first law a candidate hom table breaks, or None."""
    m = np.asarray(mapping, dtype=np.int64)
    if m.size and (m.min() < 0 or m.max() >= target.size):
        return "value outside target", None
    if m[source.bottom] != target.bottom:
        return "bottom not preserved", source.bottom
    if m[source.top] != target.top:
        return "top not preserved", source.top
    bad = np.argwhere(m[source.meet] != target.meet[m[:, None], m[None, :]])
    if len(bad):
        return "meet not preserved", tuple(int(v) for v in bad[0])
    bad = np.argwhere(m[source.join] != target.join[m[:, None], m[None, :]])
    if len(bad):
        return "join not preserved", tuple(int(v) for v in bad[0])
    return None


def right_adjoint(m: FrameHom):
    """m_*(b) = ⋁{a : m(a) ≤ b}, as a tuple indexed by target elements."""
    src, tgt = m.source, m.target
    vals = np.asarray(m.map)
    out = []
    for b in tgt:
        out.append(src.join_all(np.flatnonzero(tgt.leq[vals, b]).tolist()))
    return tuple(out)


def identity_hom(f: FiniteFrame) -> FrameHom:
    return FrameHom(f, f, range(f.size), check=False)


@dataclass
class Product:
    frame: FiniteFrame
    left: FrameHom
    right: FrameHom
    factors: tuple = field(default=())

    def pair(self, a, b):
        return a * self.factors[1].size + b

    def unpair(self, i):
        return divmod(i, self.factors[1].size)

    def pairing(self, m: FrameHom, n: FrameHom) -> FrameHom:
        """The hom ⟨m, n⟩ into the product."""
        return FrameHom(m.source, self.frame, [self.pair(m(x), n(x)) for x in m.source], check=False)


def product_frame(f: FiniteFrame, g: FiniteFrame) -> Product:
    nf, ng = f.size, g.size
    ia = np.repeat(np.arange(nf), ng)
    ib = np.tile(np.arange(ng), nf)
    leq = f.leq[ia[:, None], ia[None, :]] & g.leq[ib[:, None], ib[None, :]]
    meet = f.meet[ia[:, None], ia[None, :]] * ng + g.meet[ib[:, None], ib[None, :]]
    join = f.join[ia[:, None], ia[None, :]] * ng + g.join[ib[:, None], ib[None, :]]
    labels = [f"({f.labels[a]},{g.labels[b]})" for a, b in zip(ia, ib)]
    p = FiniteFrame(leq, meet, join, labels, check=False)
    left = FrameHom(p, f, ia, check=False)
    right = FrameHom(p, g, ib, check=False)
    return Product(p, left, right, (f, g))


@dataclass
class Subframe:
    frame: FiniteFrame
    elements: tuple  # ambient id of each subframe element
    inclusion: FrameHom

    def index(self, a):
        return self.elements.index(a)


def subframe(f: FiniteFrame, elements) -> Subframe:
    """Sub-lattice containing bottom and top, with its inclusion hom."""
    elems = sorted(set(int(e) for e in elements))
    pos = {e: k for k, e in enumerate(elems)}
    if f.bottom not in pos or f.top not in pos:
        raise NotASubframe("bounds missing")
    for a, b in combinations(elems, 2):
        for c in (int(f.meet[a, b]), int(f.join[a, b])):
            if c not in pos:
                raise NotASubframe("not closed under meet and join", (a, b))
    ix = np.array(elems)
    sub = FiniteFrame(
        f.leq[np.ix_(ix, ix)],
        np.vectorize(pos.__getitem__)(f.meet[np.ix_(ix, ix)]),
        np.vectorize(pos.__getitem__)(f.join[np.ix_(ix, ix)]),
        [f.labels[e] for e in elems],
        check=False,
    )
    return Subframe(sub, tuple(elems), FrameHom(sub, f, elems, check=False))


@dataclass
class Interval:
    frame: FiniteFrame
    elements: tuple

    def index(self, a):
        return self.elements.index(a)


def interval_frame(f: FiniteFrame, lo, hi) -> Interval:
    """The interval [lo, hi] as a frame in its own right."""
    elems = [x for x in f if f.leq[lo, x] and f.leq[x, hi]]
    pos = {e: k for k, e in enumerate(elems)}
    ix = np.array(elems)
    sub = FiniteFrame(
        f.leq[np.ix_(ix, ix)],
        np.vectorize(pos.__getitem__)(f.meet[np.ix_(ix, ix)]),
        np.vectorize(pos.__getitem__)(f.join[np.ix_(ix, ix)]),
        [f.labels[e] for e in elems],
        check=False,
    )
    return Interval(sub, tuple(elems))


def find_isomorphism(f: FiniteFrame, g: FiniteFrame):
    """An order isomorphism f → g as a FrameHom, or None."""
    if f.size != g.size:
        return None

    def signature(h):
        cov = h.covers
        return [(h.rank[x], int(h.leq[:, x].sum()), int(h.leq[x].sum()), int(cov[x].sum()), int(cov[:, x].sum()))
                for x in h]

    sf, sg = signature(f), signature(g)
    if sorted(sf) != sorted(sg):
        return None
    order = sorted(f, key=lambda x: (f.rank[x], x))
    cands = {x: [y for y in g if sg[y] == sf[x]] for x in f}
    assign = {}
    used = set()

    def extend(k):
        if k == len(order):
            return True
        x = order[k]
        for y in cands[x]:
            if y in used:
                continue
            if all(f.leq[x, z] == g.leq[y, w] and f.leq[z, x] == g.leq[w, y] for z, w in assign.items()):
                assign[x] = y
                used.add(y)
                if extend(k + 1):
                    return True
                del assign[x]
                used.discard(y)
        return False

    if not extend(0):
        return None
    return FrameHom(f, g, [assign[x] for x in f], check=False)


def is_isomorphic(f, g):
    return find_isomorphism(f, g) is not None


def enumerate_homs(f: FiniteFrame, g: FiniteFrame, limit=None):
    """Every frame homomorphism f → g, by backtracking over a rank order."""
    order = sorted(f, key=lambda x: (f.rank[x], x))
    vals = [-1] * f.size
    out = []
    fixed = {f.bottom: g.bottom, f.top: g.top}
    if f.size == 1 and g.size != 1:
        return out

    def consistent(x):
        y = vals[x]
        for z in range(f.size):
            w = vals[z]
            if w < 0:
                continue
            if f.leq[x, z] and not g.leq[y, w]:
                return False
            if f.leq[z, x] and not g.leq[w, y]:
                return False
            mm = vals[f.meet[x, z]]
            if mm >= 0 and mm != g.meet[y, w]:
                return False
            jj = vals[f.join[x, z]]
            if jj >= 0 and jj != g.join[y, w]:
                return False
        return True

    def extend(k):
        if limit is not None and len(out) >= limit:
            return
        if k == len(order):
            if hom_violation(f, g, vals) is None:
                out.append(FrameHom(f, g, vals, check=False))
            return
        x = order[k]
        choices = [fixed[x]] if x in fixed else range(g.size)
        for y in choices:
            vals[x] = y
            if consistent(x):
                extend(k + 1)
            vals[x] = -1

    extend(0)
    return out


# ---------------------------------------------------------------- JSON / files


def frame_to_json(f: FiniteFrame) -> dict:
    covers = [[int(a), int(b)] for a, b in np.argwhere(f.covers)]
    out = {"size": f.size, "covers": covers}
    if any(lab != str(i) for i, lab in enumerate(f.labels)):
        out["labels"] = {str(i): lab for i, lab in enumerate(f.labels)}
    return out


def frame_from_json(data: dict) -> FiniteFrame:
    n = int(data["size"])
    labels = None
    if data.get("labels"):
        labels = [data["labels"].get(str(i), str(i)) for i in range(n)]
    return build_frame(PosetSpec(n, tuple(tuple(p) for p in data["covers"])), labels=labels)


def load_frame(path) -> FiniteFrame:
    return frame_from_json(json.loads(Path(path).read_text()))


def save_frame(f: FiniteFrame, path):
    Path(path).write_text(json.dumps(frame_to_json(f), indent=1))


def load_hom(path) -> FrameHom:
    path = Path(path)
    data = json.loads(path.read_text())
    src = load_frame(path.parent / data["source"])
    tgt = load_frame(path.parent / data["target"])
    return FrameHom(src, tgt, data["map"])


def element_by_label(f: FiniteFrame, token: str):
    """Resolve an element given as an id or a label."""
    if token in f.labels:
        return f.labels.index(token)
    aliases = {"bot": f.bottom, "bottom": f.bottom, "⊥": f.bottom, "top": f.top, "⊤": f.top}
    if token in aliases:
        return aliases[token]
    return int(token)
