"""Named verification suites and the runner that executes them.

A frame suite runs each of its claims on every corpus frame.  A sampled
suite runs seeded generators over the line carriers or over hom pools.
Claims that rely on complete regularity can be gated: on frames outside
the hypothesis the check still runs, but its outcome is logged as a
divergence instead of counting toward pass/fail.

Gate modes:
  "noted"  gate only the successor/maxima identities of Lemma 2, the claims
           that are gated wherever the workbench is used
  "cr"     gate every claim whose proof uses complete regularity
  "none"   assert everything everywhere
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import claims as C
from . import sampling as S
from .corpus import corpus_frames, mutate_table
from .frame import FrameError
from .report import ClaimResult, Verdict

GATES = ("noted", "cr", "none")
FRAME_MUTATIONS = ("join", "meet", "leq", "swap", "cut", "covers")


class UnknownSuite(FrameError):
    pass


@dataclass(frozen=True)
class Claim:
    tag: str
    check: Callable
    needs_cr: bool = False
    noted: bool = False
    max_size: int | None = None


@dataclass(frozen=True)
class SampledClaim:
    tag: str
    check: Callable  # (rng, ops, gate_cr) -> (Verdict, count)
    needs_cr: bool = False
    takes_gate: bool = False


@dataclass
class Suite:
    name: str
    claims: list
    description: str = ""
    mutations: tuple = FRAME_MUTATIONS


@dataclass
class SuiteReport:
    suite: str
    seed: int
    gate: str
    results: list
    seconds: float
    frames: int = 0
    mutation: str | None = None

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def lines(self):
        head = f"suite {self.suite} (seed {self.seed}, gate {self.gate}"
        if self.mutation:
            head += f", mutation {self.mutation}"
        head += f"): {'PASS' if self.passed else 'FAIL'} in {self.seconds:.2f}s"
        return [head] + ["  " + r.line() for r in self.results]

    def to_json(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "gate": self.gate,
            "mutation": self.mutation,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "frames": self.frames,
            "claims": [
                {
                    "tag": r.tag,
                    "status": r.status,
                    "checked": r.checked,
                    "skipped": r.skipped,
                    "witness": None if r.passed else _jsonable(r.witness),
                    "divergences": len(r.divergences),
                }
                for r in self.results
            ],
        }


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


# ------------------------------------------------------------------ registry


FINITE = [
    Claim("Lemma 1(1)", C.lemma1_intervals),
    Claim("Lemma 1(2)", C.lemma1_plus),
    Claim("Lemma 2(3)", C.lemma2_successor, needs_cr=True, noted=True),
    Claim("Lemma 2(4)", C.lemma2_predecessor, needs_cr=True, noted=True),
    Claim("Lemma 2(5)", C.lemma2_product, noted=True),
    Claim("Lemma 2(6)", C.lemma2_complemented_successor, noted=True),
    Claim("Lemma 3(1)", C.lemma3_prime_pullback),
    Claim("Lemma 3(2)", C.lemma3_max_pullback, needs_cr=True),
    Claim("Lemma 3(3)", C.lemma3_prime_image, needs_cr=True),
    Claim("Lemma 4", C.lemma4),
    Claim("Lemma 5", C.lemma5, needs_cr=True),
    Claim("Lemma 8", C.lemma8),
    Claim("Lemma 9(2)", C.lemma9_preimage_open),
    Claim("Lemma 11", C.lemma11),
    Claim("Lemma 13", C.lemma13, needs_cr=True),
    Claim("Lemma 14", C.lemma14, needs_cr=True),
    Claim("Lemma 17 (kernel normal)", C.lemma17_kernel_normal),
    Claim("Lemma 17 (uniqueness)", C.lemma17_unique, needs_cr=True),
    Claim("Lemma 18", C.lemma18),
    Claim("Lemma 20", C.lemma20, needs_cr=True),
    Claim("Lemma 33", C.lemma33),
    Claim("Prop 3 (fix set)", C.prop3_fix),
    Claim("Prop 3 (kernel)", C.prop3_kernel, needs_cr=True),
    Claim("Prop 13 = Prop 23", C.prop13_23, needs_cr=True),
    Claim("Prop 11", C.prop11, needs_cr=True),
    Claim("Prop 14", C.prop14),
    Claim("Cor 2", C.cor2, needs_cr=True),
]

LEMMA2_EXTRA = [
    Claim("Lemma 2(1)", C.lemma2_max_prime, needs_cr=True, noted=True),
    Claim("Lemma 2(2)", C.lemma2_atoms, needs_cr=True, noted=True),
]

CON_L = [
    Claim("Lemma 10", C.lemma10, needs_cr=True, max_size=12),
    Claim("Lemma 9(1)", C.lemma9_iso, max_size=8),
]

NUCLEUS = [
    Claim("filter prenuclei", C.nucleus_filters),
    Claim("successor prenucleus", C.nucleus_successors),
]

BELOW = [
    Claim("completely below = interposer oracle", C.below_matches_oracle),
    Claim("completely below interpolates", C.below_interpolates),
    Claim("completely below monotone", C.below_monotone),
    Claim("completely regular iff Boolean", C.cr_means_boolean),
    Claim("CR coreflection = largest CR subframe", C.coreflection_matches_oracle, max_size=8),
]

LEMMA22 = [
    Claim("Lemma 22(2)", C.lemma22_core, max_size=8),
    Claim("Lemma 22(3)", C.lemma22_maximal_criterion, max_size=8),
    Claim("Lemma 22(4)", C.lemma22_independent, max_size=8),
    Claim("Lemma 22(5)", C.lemma22_join_of_stars, needs_cr=True, max_size=8),
    Claim("Lemma 22(8)", C.lemma22_ultrafilter_cores, max_size=8),
    Claim("Lemma 22(9)", C.lemma22_primeness, max_size=8),
    Claim("Lemma 22(10)", C.lemma22_duality, max_size=8),
]

LEMMA22_EXTRA = [
    Claim("Lemma 22(6)", C.lemma22_xa, needs_cr=True, max_size=8),
    Claim("Lemma 22(7)", C.lemma22_completely_prime, max_size=8),
]

POINT_FILTERS = [SampledClaim("Cor 3 (point filter challenges)", S.point_filter_challenges)]

RLINE = [
    SampledClaim("Prop 16 (1),(2)", S.prop16_exact),
    SampledClaim("fill nucleus laws", S.fill_nucleus_laws),
    SampledClaim("Heyting adjunction", S.heyting_adjunction),
    SampledClaim("pl_meet on grid shapes", S.pl_meet_closed),
]

ATTACH = [
    SampledClaim("Prop 18(2) maxima", S.attach_maxima),
    SampledClaim("L_W closure", S.attach_closure),
    SampledClaim("Prop 18(1) atomless", S.attach_atomless),
    SampledClaim("Lemma 27/28 witnesses", S.attach_witnesses),
    SampledClaim("Prop 17 k_X coherence", S.attach_kx_coherence),
    SampledClaim("Prop 19 self-check", S.attach_prop19),
]

EM = [
    SampledClaim("em_factorize sources", S.em_sources, needs_cr=True, takes_gate=True),
    SampledClaim("em_diagonalize squares", S.em_squares, needs_cr=True, takes_gate=True),
    SampledClaim("Prop 8 / Prop 5", S.em_biconditionals, needs_cr=True, takes_gate=True),
]

RLINE_MUTATIONS = ("join-nofill", "fill-drop", "heyting-classical", "meet-puncture")
ATTACH_MUTATIONS = ("meet-union-flags", "max-extra")
FILTER_MUTATIONS = ("join", "meet", "swap", "witness-wide")
EM_MUTATIONS = ("factor-identity",)

SUITES = {}


def register(suite: Suite):
    SUITES[suite.name] = suite
    return suite


register(Suite("finite", FINITE, "finite-lemma suite over the corpus"))
register(Suite("con", CON_L, "congruence lattice structure"))
register(Suite("nucleus", NUCLEUS, "prenucleus iteration"))
register(Suite("below", BELOW, "completely below relation and the CR coreflection"))
register(Suite("filters", LEMMA22 + POINT_FILTERS, "round filters", FILTER_MUTATIONS))
register(Suite("filters-extra", LEMMA22_EXTRA, "remaining round-filter parts"))
register(Suite("rline", RLINE, "interval carrier", RLINE_MUTATIONS))
register(Suite("attach", ATTACH, "point attachment", ATTACH_MUTATIONS))
register(Suite("em", EM, "E/M factorization machinery", EM_MUTATIONS))
register(Suite("lemma2", [*LEMMA2_EXTRA, *(c for c in FINITE if c.tag.startswith("Lemma 2("))], "successors and maxima"))


def _select(prefix):
    pool = FINITE + CON_L + LEMMA2_EXTRA
    return [c for c in pool if c.tag == prefix or c.tag.startswith(prefix + "(") or c.tag.startswith(prefix + " ")]


for _key, _prefix in [
    ("lemma1", "Lemma 1"), ("lemma3", "Lemma 3"), ("lemma4", "Lemma 4"), ("lemma5", "Lemma 5"),
    ("lemma8", "Lemma 8"), ("lemma9", "Lemma 9"), ("lemma10", "Lemma 10"), ("lemma11", "Lemma 11"),
    ("lemma13", "Lemma 13"), ("lemma14", "Lemma 14"), ("lemma17", "Lemma 17"), ("lemma18", "Lemma 18"),
    ("lemma20", "Lemma 20"), ("lemma33", "Lemma 33"), ("prop3", "Prop 3"), ("prop11", "Prop 11"),
    ("prop13", "Prop 13"), ("prop14", "Prop 14"), ("cor2", "Cor 2"),
]:
    register(Suite(_key, _select(_prefix)))

ALL_SUITES = tuple(SUITES)


def suite_names():
    return list(SUITES)


# ------------------------------------------------------------------ mutations


def _mutated_ops(kind):
    from fractions import Fraction

    from . import attach as lw
    from . import filters as flt
    from . import rline

    ops = S.default_ops()
    if kind == "join-nofill":
        ops.pl_join = rline.io_join_all
    elif kind == "fill-drop":
        ops.fill = lambda u: rline.IntervalOpen(rline.io_fill(u).intervals[1:])
    elif kind == "heyting-classical":
        ops.heyting = lambda a, b: rline.io_join(rline.closure_complement(a), b)
    elif kind == "meet-puncture":
        def meet(us):
            m = rline.pl_meet(us)
            if not m.intervals:
                return m
            lo, hi = m.intervals[0]
            mid = Fraction(0) if (lo, hi) == (rline.NEG_INF, rline.INF) else (
                hi - 1 if lo == rline.NEG_INF else (lo + 1 if hi == rline.INF else (lo + hi) / 2))
            return rline.IntervalOpen(((lo, mid), (mid, hi)) + m.intervals[1:])
        ops.pl_meet = meet
    elif kind == "meet-union-flags":
        def meet(spec, e1, e2):
            e = lw.LWElement(e1.flags | e2.flags, rline.pl_meet([e1.body, e2.body]))
            lw.check_element(spec, e)
            return e
        ops.lw_meet = meet
    elif kind == "max-extra":
        ops.lw_max = lambda spec: lw.lw_max(spec) + [spec.top()]
    elif kind == "witness-wide":
        def point_filter(x, samples=None, challenges=None):
            y = flt.point_filter(x, samples, challenges)
            good = y.regular_witness
            y.regular_witness = lambda V: rline.io_join(good(V), rline.interval(x - 100, x + 100))
            return y
        ops.point_filter = point_filter
    elif kind == "factor-identity":
        from .frame import identity_hom
        from .reflection import EMFactorization, SourceOfHoms, in_E, in_M

        def factor(s):
            e = identity_hom(s.domain)
            return EMFactorization(e, list(s.arms), frozenset(), None, in_E(e), in_M(SourceOfHoms(s.domain, list(s.arms))))
        ops.em_factorize = factor
    elif kind not in FRAME_MUTATIONS:
        raise ValueError(f"unknown mutation {kind!r}")
    return ops


def mutate_frame(f, rng, kind):
    """Corrupt one frame.

    'cut' removes an order relation below the top; 'covers' leaves the
    tables alone but plants a cover table with the edges into ⊤ deleted.
    """
    if kind not in ("cut", "covers"):
        return mutate_table(f, rng, kind)
    import numpy as np

    from .frame import FiniteFrame

    leq = f.leq.copy()
    below = [int(a) for a in np.flatnonzero(f.covers[:, f.top])]
    if kind == "cut":
        leq[rng.choice(below), f.top] = False
    g = FiniteFrame.unchecked(leq, f.meet, f.join, f.labels)
    if kind == "covers":
        cov = f.covers.copy()
        cov[:, f.top] = False
        g.__dict__["covers"] = cov
    return g


# ------------------------------------------------------------------ runner


def _gated(claim, gate):
    if gate == "cr":
        return claim.needs_cr
    if gate == "noted":
        return claim.noted
    return False


def _run_frame_claim(claim, contexts, gate):
    res = ClaimResult(claim.tag, True)
    for ctx in contexts:
        if claim.max_size is not None and ctx.f.size > claim.max_size:
            continue
        try:
            v = claim.check(ctx)
        except Exception as exc:  # an exception inside a check is a failed claim
            v = Verdict(False, f"{type(exc).__name__}: {exc}")
        if _gated(claim, gate) and not _safe_cr(ctx):
            res.skipped += 1
            if not v:
                res.divergences.append((ctx.name, v.witness))
            continue
        res.checked += 1
        if not v and res.passed:
            res.passed = False
            res.witness = (ctx.name, v.witness)
    if res.divergences:
        res.note = f"e.g. {res.divergences[0][0]}"
    return res


def _safe_cr(ctx):
    try:
        return ctx.cr
    except Exception:
        return False


def _run_sampled_claim(claim, rng, ops, gate):
    gate_cr = claim.needs_cr and gate == "cr"
    try:
        if claim.takes_gate:
            v, n = claim.check(rng, ops, gate_cr=gate_cr)
        else:
            v, n = claim.check(rng, ops)
    except Exception as exc:
        v, n = Verdict(False, f"{type(exc).__name__}: {exc}"), 0
    res = ClaimResult(claim.tag, bool(v), n, None if v else v.witness)
    if gate_cr:
        res.note = "generated inside the hypothesis"
    return res


def contexts_for(entries, seed=0, mutation=None):
    out = []
    rng = random.Random(f"{seed}:mutation:{mutation}")
    for e in entries:
        f = e.frame
        if mutation in FRAME_MUTATIONS:
            if f.size < 2:
                continue
            f = mutate_frame(f, rng, mutation)
        out.append(C.FrameContext(f, e.name, seed))
    return out


def run_suite(name, corpus=None, seed=0, gate="noted", mutation=None, contexts=None) -> SuiteReport:
    """Run one registered suite.

    ``corpus`` is a list of corpus entries (default: every poset with at most
    five points).  A mutation name corrupts the inputs: frames for frame
    claims, the operations under test for sampled claims.
    """
    if name not in SUITES:
        raise UnknownSuite(f"no suite named {name!r}", sorted(SUITES))
    if gate not in GATES:
        raise ValueError(f"gate must be one of {GATES}")
    suite = SUITES[name]
    t0 = time.perf_counter()
    frame_claims = [c for c in suite.claims if isinstance(c, Claim)]
    sampled = [c for c in suite.claims if isinstance(c, SampledClaim)]
    if frame_claims and contexts is None:
        entries = corpus if corpus is not None else corpus_frames(5)
        contexts = contexts_for(entries, seed, mutation)
    results = [_run_frame_claim(c, contexts, gate) for c in frame_claims]
    if sampled:
        ops = _mutated_ops(mutation) if mutation else S.default_ops()
        for c in sampled:
            results.append(_run_sampled_claim(c, random.Random(f"{seed}:{c.tag}"), ops, gate))
    return SuiteReport(name, seed, gate, results, time.perf_counter() - t0,
                       len(contexts or []), mutation)


def mutation_probe(name, seed=0, corpus=None, gate="cr"):
    """Run the suite under each of its mutations until one makes it fail.

    The unmutated run on the same inputs must pass first, so that a
    failure can be blamed on the mutation.  Returns (baseline, failing
    report); the second item is None when every mutation passed.
    """
    suite = SUITES[name]
    if corpus is None:
        corpus = [e for e in corpus_frames(3) if e.size >= 2]
    base = run_suite(name, corpus, seed, gate=gate)
    if not base.passed:
        return base, None
    for kind in suite.mutations:
        rep = run_suite(name, corpus, seed, gate=gate, mutation=kind)
        if not rep.passed:
            return base, rep
    return base, None
