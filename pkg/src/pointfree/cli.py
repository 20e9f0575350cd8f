"""Command line workbench: ``pointfree <verb> ...``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import attach as lw
from . import filters as flt
from . import order, rline
from .congruence import (
    atoms_of,
    closed_cong,
    dense_cong,
    enumerate_congruences,
    maximal_elements,
    open_cong,
)
from .corpus import corpus_frames
from .dot import emit_dot
from .frame import FiniteFrame, FrameError, boolean, chain, element_by_label, load_frame, load_hom
from .nucleus import (
    filter_nucleus,
    pi_nucleus,
    pi_prenucleus,
    prenucleus_from_filter,
    sigma_nucleus,
)
from .reflection import em_classify, fat_reflection, is_skinny, pointless_part, spatial_part
from .suites import GATES, SUITES, UnknownSuite, run_suite

# "verify --suite all" runs these; the per-lemma suites are slices of "finite"
ALL_SUITES = ("finite", "lemma2", "con", "nucleus", "below", "filters", "filters-extra", "rline", "attach", "em")


def resolve_frame(token: str) -> FiniteFrame:
    """A JSON file, or a builtin name: C<n> chain, B<k> Boolean, P<n>.<k> corpus entry."""
    if Path(token).exists():
        return load_frame(token)
    if m := re.fullmatch(r"C(\d+)", token):
        return chain(int(m.group(1)))
    if m := re.fullmatch(r"B(\d+)", token):
        return boolean(int(m.group(1)))
    if m := re.fullmatch(r"P(\d+)\.(\d+)", token):
        for e in corpus_frames(int(m.group(1))):
            if e.name == token:
                return e.frame
    raise FrameError(f"no frame file or builtin named {token!r}")


def _names(f, elems):
    return [f.labels[a] for a in sorted(elems)]


def _classes(f, c):
    return [_names(f, cls) for cls in c.classes]


def _emit(args, data, text_lines):
    if args.json:
        print(json.dumps(data, indent=1, default=str))
    else:
        print("\n".join(text_lines))


# ------------------------------------------------------------------ verbs


def cmd_analyze(args):
    f = resolve_frame(args.frame)
    punct = [a for a in f if order.is_punctured(f, a)]
    data = {
        "size": f.size,
        "atoms": _names(f, order.atoms(f)),
        "maxima": _names(f, order.maxima(f)),
        "punctured": _names(f, punct),
        "center": _names(f, order.center(f)),
        "completely_regular": order.is_completely_regular(f),
        "spatial": order.is_spatial(f),
        "pointless": order.is_pointless(f),
        "rather_below": order.rather_below(f).to_json(),
        "completely_below": order.completely_below(f).to_json(),
    }
    lines = [f"{k}: {v}" for k, v in data.items() if k not in ("rather_below", "completely_below")]
    cb = order.completely_below(f).pairs
    lines.append("completely below: " + ", ".join(
        f"{f.labels[a]}<<{f.labels[b]}" for a in f for b in f if cb[a, b]))
    _emit(args, data, lines)
    return 0


def cmd_reflect(args):
    f = resolve_frame(args.frame)
    s, p = spatial_part(f), pointless_part(f)
    fr = fat_reflection(f)
    data = {
        "sigma": [f.labels[x] for x in sigma_nucleus(f).op],
        "pi": [f.labels[x] for x in pi_nucleus(f).op],
        "spatial_part_size": s.quotient.size,
        "pointless_part_size": p.quotient.size,
        "tau": [list(t) for t in fr.tau],
        "tau_injective": fr.injective,
        "fat": fr.fat,
        "homs": [],
    }
    for path in args.hom or []:
        m = load_hom(path)
        cls = em_classify(m)
        data["homs"].append({"hom": path, "skinny": bool(is_skinny(m)), "E": cls.in_E, "M": cls.in_M})
    lines = [
        "σ: " + " ".join(f"{f.labels[a]}->{v}" for a, v in zip(f, data["sigma"])),
        "π: " + " ".join(f"{f.labels[a]}->{v}" for a, v in zip(f, data["pi"])),
        f"spatial part: {s.quotient.size} elements; pointless part: {p.quotient.size} elements",
        "τ: " + " ".join(f"{f.labels[a]}->{t}" for a, t in zip(f, fr.tau)),
        f"τ injective: {fr.injective}; fat: {fr.fat}",
    ]
    lines += [f"{h['hom']}: skinny {h['skinny']}, E {h['E']}, M {h['M']}" for h in data["homs"]]
    _emit(args, data, lines)
    return 0


def cmd_assembly(args):
    f = resolve_frame(args.frame)
    data = {
        "Phi": {f.labels[a]: _classes(f, open_cong(f, a)) for a in f},
        "Psi": {f.labels[a]: _classes(f, closed_cong(f, a)) for a in f},
        "Delta": _classes(f, dense_cong(f)),
    }
    lines = [f"Φ_{a}: {c}" for a, c in data["Phi"].items()]
    lines += [f"Ψ_{a}: {c}" for a, c in data["Psi"].items()]
    lines.append(f"Δ: {data['Delta']}")
    if args.enumerate:
        congs = enumerate_congruences(f, limit=None)
        data["congruences"] = [_classes(f, c) for c in congs]
        data["maximal"] = [_classes(f, c) for c in maximal_elements(congs)]
        data["atoms"] = [_classes(f, c) for c in atoms_of(congs)]
        data["dot"] = emit_dot(("con", f))
        lines.append(f"Con L: {len(congs)} congruences")
        lines += [f"  maximal: {c}" for c in data["maximal"]]
        lines += [f"  atom: {c}" for c in data["atoms"]]
        lines.append(data["dot"].rstrip())
    _emit(args, data, lines)
    return 0


def cmd_filters(args):
    if args.frame.startswith("point:"):
        x = Fraction(args.frame[len("point:"):])
        y = flt.point_filter(x)
        challenges = [rline.parse(v) for v in args.challenge or []]
        u = rline.interval(x - 1, x + 1)
        data = {"point": str(x), "member": str(u), "round_witness": str(y.round_witness(u)),
                "shrink": str(flt.shrink_member(y, u)), "answers": []}
        for V in challenges:
            b = y.regular_witness(V)
            flt.is_regular(y, [V])
            data["answers"].append({"challenge": str(V), "witness": str(b)})
        lines = [f"{k}: {v}" for k, v in data.items() if k != "answers"]
        lines += [f"challenge {a['challenge']} answered by {a['witness']}" for a in data["answers"]]
        _emit(args, data, lines)
        return 0
    f = resolve_frame(args.frame)
    fs = flt.enumerate_filters(f)
    ultra = flt.ultrafilters(fs)
    data = {
        "filters": len(fs),
        "ultrafilters": [_names(f, x.members) for x in ultra],
        "x_a": {f.labels[a]: _names(f, flt.x_filter(f, a).members) for a in order.maxima(f)},
    }
    if args.enumerate_round:
        rnd = [x for x in fs if flt.is_round(x)]
        data["round"] = [_names(f, x.members) for x in rnd]
        data["maximal_round"] = [_names(f, x.members) for x in flt.maximal_round_filters(fs)]
    lines = [f"{k}: {v}" for k, v in data.items()]
    _emit(args, data, lines)
    return 0


def _nucleus_for(f, kind):
    if kind == "sigma":
        return None, sigma_nucleus(f)
    if kind == "pi":
        return pi_prenucleus(f), pi_nucleus(f)
    if kind.startswith("filter:"):
        # the filter generated by the listed elements: everything above their meet
        gens = [element_by_label(f, t) for t in kind[len("filter:"):].split(",") if t]
        low = f.meet_all(gens) if gens else f.top
        members = [x for x in f if f.leq[low, x]]
        return prenucleus_from_filter(f, members), filter_nucleus(f, members)
    raise FrameError(f"unknown nucleus kind {kind!r}")


def cmd_nucleus(args):
    f = resolve_frame(args.frame)
    pre, n = _nucleus_for(f, args.kind)
    data = {
        "kind": args.kind,
        "table": {f.labels[a]: f.labels[n(a)] for a in f},
        "kernel": _names(f, n.kernel),
        "fix": _names(f, n.fix),
        "iterations": n.iterations,
    }
    if pre is not None:
        data["prenucleus"] = {f.labels[a]: f.labels[pre(a)] for a in f}
    lines = ["table: " + " ".join(f"{a}->{b}" for a, b in data["table"].items()),
             f"kernel: {data['kernel']}", f"fix: {data['fix']}", f"iterations: {data['iterations']}"]
    _emit(args, data, lines)
    return 0


def cmd_rline(args):
    op, xs = args.op, args.args
    need = {"eval": 1, "fill": 1, "star": 1, "imp": 2, "cb": 2, "prop16": 2}[op]
    if len(xs) != need:
        raise FrameError(f"rline {op} takes {need} argument(s)")
    if op == "prop16":
        r = rline.prop16_check(Fraction(xs[0]), Fraction(xs[1]))
        data = {"p": str(r.p), "q": str(r.q), "join_is_top": r.join_is_top, "meet_is_bottom": r.meet_is_bottom,
                "exact_ok": r.exact_ok, "rel3_monotone": r.rel3_monotone, "rel4_monotone": r.rel4_monotone,
                "note": r.note}
        _emit(args, data, [f"{k}: {v}" for k, v in data.items()])
        return 0 if r.exact_ok else 1
    us = [rline.parse(x) for x in xs]
    u = us[0]
    if op == "eval":
        pv = rline.io_is_punctured(u)
        data = {"value": str(u), "punctured": pv.value, "missing_points": [str(p) for p in rline.io_successor_points(u)],
                "closure_complement": str(rline.closure_complement(u))}
    elif op == "fill":
        data = {"value": str(rline.io_fill(u))}
    elif op == "star":
        data = {"value": str(rline.PointlessLine.star(rline.io_fill(u)))}
    elif op == "imp":
        a, b = (rline.io_fill(v) for v in us)
        data = {"value": str(rline.PointlessLine.imp(a, b))}
    else:
        data = {"value": rline.io_completely_below(*us)}
        if data["value"]:
            data["interpolant"] = str(rline.io_interpolate(*us))
    _emit(args, data, [f"{k}: {v}" for k, v in data.items()])
    return 0


def cmd_attach(args):
    spec = lw.AttachmentSpec([Fraction(p) for p in args.points.split(",")])
    es = [lw.parse_element(spec, t) for t in args.args.split("|") if t.strip()] if args.args else []
    show = lambda e: lw.element_to_json(spec, e)  # noqa: E731
    op = args.op
    if op == "meet":
        out = show(lw.lw_meet_all(spec, es))
    elif op == "join":
        out = show(lw.lw_join(spec, es))
    elif op == "max":
        out = [show(e) for e in lw.lw_max(spec)]
    elif op == "leq":
        out = lw.lw_leq(*es)
    elif op == "pi":
        out = show(lw.lw_pi_project(spec, es[0]))
    elif op == "sigma":
        out = show(lw.lw_sigma_project(spec, es[0]))
    elif op == "k":
        X = [Fraction(p) for p in (args.X or "").split(",") if p]
        target, k = lw.kx_quotient(spec, X)
        out = lw.element_to_json(target, k(es[0]))
    else:
        raise FrameError(f"unknown attach op {op!r}")
    data = {"points": [str(p) for p in spec.points], "op": op, "result": out}
    _emit(args, data, [json.dumps(out)])
    return 0


def cmd_verify(args):
    seed = args.seed
    if os.environ.get("WORKBENCH_SEED"):
        seed = int(os.environ["WORKBENCH_SEED"])
    names = ALL_SUITES if args.suite == "all" else [args.suite]
    for n in names:
        if n not in SUITES:
            raise UnknownSuite(f"no suite named {n!r}", sorted(SUITES))
    corpus = corpus_frames(args.max_poset_size)
    reports = [run_suite(n, corpus, seed, gate=args.gate, mutation=args.mutation) for n in names]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=1))
    else:
        for r in reports:
            print("\n".join(r.lines()))
    return 0 if all(r.passed for r in reports) else 1


def cmd_dot(args):
    f = resolve_frame(args.frame)
    if args.con:
        print(emit_dot(("con", f)), end="")
    elif args.relation:
        table = {"cb": order.completely_below, "rb": order.rather_below}[args.relation](f)
        print(emit_dot(table), end="")
    else:
        print(emit_dot(f), end="")
    return 0


# ------------------------------------------------------------------ parser


def build_parser():
    p = argparse.ArgumentParser(prog="pointfree", description="finite frame and real-line workbench")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="verb", required=True)

    def frame_verb(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--frame", required=True, help="JSON file or builtin (C3, B2, P3.1)")
        s.set_defaults(fn=fn)
        return s

    frame_verb("analyze", cmd_analyze, "atoms, maxima, punctured set, center, CR flag")
    s = frame_verb("reflect", cmd_reflect, "σ/π quotients, τ and hom classification")
    s.add_argument("--hom", action="append", help="JSON hom file (repeatable)")
    s = frame_verb("assembly", cmd_assembly, "Φ/Ψ/Δ tables")
    s.add_argument("--enumerate", action="store_true", help="also the full congruence lattice")
    s = frame_verb("filters", cmd_filters, "filters of a frame, or point:<rational> on the line")
    s.add_argument("--enumerate-round", action="store_true")
    s.add_argument("--challenge", action="append", help="open set V for the regularity oracle")
    s = frame_verb("nucleus", cmd_nucleus, "operator table, kernel and fix set")
    s.add_argument("--kind", default="sigma", help="sigma | pi | filter:<elements>")
    s = frame_verb("dot", cmd_dot, "Graphviz text")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--con", action="store_true", help="congruence lattice")
    g.add_argument("--relation", choices=("cb", "rb"), help="overlay ≪ (cb) or ◁ (rb) as dashed edges")

    s = sub.add_parser("rline", help="interval-open calculator")
    s.add_argument("op", choices=("eval", "fill", "star", "imp", "cb", "prop16"))
    s.add_argument("args", nargs="*")
    s.set_defaults(fn=cmd_rline)

    s = sub.add_parser("attach", help="finitely many points attached to the pointless line")
    s.add_argument("--points", required=True, help="comma separated rationals")
    s.add_argument("--op", required=True, choices=("meet", "join", "max", "leq", "pi", "sigma", "k"))
    s.add_argument("--args", default="", help="elements separated by '|', e.g. '{0}:(-1,1)|{}:(2,3)'")
    s.add_argument("--X", help="subset of the points for op k")
    s.set_defaults(fn=cmd_attach)

    s = sub.add_parser("verify", help="run lemma verification suites")
    s.add_argument("--suite", default="all", help="suite id or 'all'")
    s.add_argument("--max-poset-size", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--gate", choices=GATES, default="noted")
    s.add_argument("--mutation", default=None)
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FrameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
