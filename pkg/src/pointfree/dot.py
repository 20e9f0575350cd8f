"""Graphviz text for Hasse diagrams, congruence lattices and relation overlays."""

from __future__ import annotations

import numpy as np

from .congruence import congruence_lattice
from .frame import FiniteFrame
from .order import RelationTable


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _hasse_lines(f: FiniteFrame, labels=None):
    labels = labels or f.labels
    rank = f.rank
    lines = ["  rankdir=BT;", "  node [shape=circle];"]
    for a in f:
        lines.append(f"  n{a} [label={_quote(labels[a])}];")
    # one rank group per level keeps bottom at the foot of the drawing
    for r in sorted(set(int(x) for x in rank)):
        members = " ".join(f"n{a};" for a in f if rank[a] == r)
        lines.append(f"  {{ rank=same; {members} }}")
    for a, b in np.argwhere(f.covers):
        lines.append(f"  n{a} -> n{b};")
    return lines


def emit_dot(obj, name="L", overlay: RelationTable | None = None, strict_only=True) -> str:
    """DOT text for a frame, a congruence lattice or a relation table.

    Pass a FiniteFrame for its Hasse diagram, ("con", frame) for Con L
    ordered by refinement, or a RelationTable to draw the frame with the
    relation as dashed edges.  Node ids are element ids, so output is stable.
    """
    if isinstance(obj, RelationTable):
        overlay, obj = obj, obj.frame
    labels = None
    if isinstance(obj, tuple) and obj and obj[0] == "con":
        lattice, congs = congruence_lattice(obj[1], limit=None)
        labels = ["|".join("".join(obj[1].labels[x] for x in cls) for cls in c.classes) for c in congs]
        obj = lattice
        name = name if name != "L" else "ConL"
    if not isinstance(obj, FiniteFrame):
        raise TypeError(f"cannot draw {type(obj).__name__}")
    lines = [f"digraph {_quote(name)} {{"]
    lines += _hasse_lines(obj, labels)
    if overlay is not None:
        for a, b in np.argwhere(overlay.pairs):
            if strict_only and a == b:
                continue
            lines.append(f"  n{a} -> n{b} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
