"""DOT rendering of the 1-skeleton of an HDA."""

from __future__ import annotations

from typing import Iterator

from .hda import HDA
from .precubical import face


def _q(s) -> str:
    return '"' + str(s).replace('"', '\\"') + '"'


def dot_lines(X: HDA, name: str = "hda") -> Iterator[str]:
    C = X.complex
    init, acc = set(X.initial), set(X.accepting)
    yield f"digraph {_q(name)} {{"
    yield "  rankdir=LR;"
    yield '  node [shape=circle, label="", width=0.25];'
    for v in C.cells(0):
        attrs = [f"xlabel={_q(v)}"]
        if v in acc:
            attrs.append("shape=doublecircle")
        yield f"  {_q(v)} [{', '.join(attrs)}];"
    for v in C.cells(0):
        if v in init:
            yield f"  {_q('start ' + v)} [shape=point, style=invis];"
            yield f"  {_q('start ' + v)} -> {_q(v)};"
    for e in C.cells(1):
        src, tgt = C.delta(e, 1, 0), C.delta(e, 1, 1)
        yield f"  {_q(src)} -> {_q(tgt)} [label={_q(X.edge_labels[e])}];"
    for x in C.cells():
        n = C.dim(x)
        if n < 2:
            continue
        lo = face(C, x, range(1, n + 1), 0)
        hi = face(C, x, range(1, n + 1), 1)
        kind = "square" if n == 2 else f"{n}-cube"
        yield f"  // {kind} {x}: from {lo} to {hi}, labels ({','.join(X.label(x))})"
    for x in X.initial:
        if C.dim(x) > 0:
            yield f"  // initial {C.dim(x)}-cell {x}"
    for x in X.accepting:
        if C.dim(x) > 0:
            yield f"  // accepting {C.dim(x)}-cell {x}"
    yield "}"


def export_dot(X: HDA, name: str = "hda") -> str:
    return "\n".join(dot_lines(X, name)) + "\n"
