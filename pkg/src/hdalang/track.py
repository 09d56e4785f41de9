"""Tracks: sequences of cells linked by iterated lower or upper faces."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import NotATrack, NotFaceRelated, NotInterval
from .hda import HDA, TrackObject
from .ipomset import Ipomset, is_interval, maximal_antichains
from .precubical import EXEC, ONE, ZERO, face, lower_cofaces


@dataclass(frozen=True)
class Step:
    """``lower``: the next cell has the current one as ``δ^0_A`` face.
    ``upper``: the next cell is ``δ^1_A`` of the current one."""

    kind: str
    indices: frozenset

    def __str__(self):
        mark = "v" if self.kind == "lower" else "^"
        return mark + "{" + ",".join(str(i) for i in sorted(self.indices)) + "}"


@dataclass(frozen=True)
class Track:
    cells: tuple
    steps: tuple

    def __len__(self):
        return len(self.cells)

    @property
    def source(self):
        return self.cells[0]

    @property
    def target(self):
        return self.cells[-1]

    def is_full(self) -> bool:
        return all(len(s.indices) == 1 for s in self.steps)

    def describe(self) -> str:
        parts = [str(self.cells[0])]
        for s, c in zip(self.steps, self.cells[1:]):
            parts += [str(s), str(c)]
        return " ".join(parts)


def infer_step(X: HDA, a, b) -> Step:
    C = X.complex
    if a == b:
        return Step("lower", frozenset())
    da, db = C.dim(a), C.dim(b)
    if db > da:
        for A in combinations(range(1, db + 1), db - da):
            if face(C, b, A, 0) == a:
                return Step("lower", frozenset(A))
    elif da > db:
        for A in combinations(range(1, da + 1), da - db):
            if face(C, a, A, 1) == b:
                return Step("upper", frozenset(A))
    raise NotFaceRelated(f"{a!r} and {b!r} are not linked by a lower or upper face")


def validate_track(X: HDA, cells: Sequence) -> Track:
    cells = tuple(cells)
    if not cells:
        raise NotATrack("a track has at least one cell")
    for c in cells:
        if c not in X:
            raise NotATrack(f"unknown cell {c!r}")
    steps = tuple(infer_step(X, a, b) for a, b in zip(cells, cells[1:]))
    return Track(cells, steps)


def concat(r: Track, s: Track) -> Track:
    if r.target != s.source:
        raise NotATrack("tracks do not meet")
    return Track(r.cells + s.cells[1:], r.steps + s.steps)


def is_accepting(X: HDA, t: Track) -> bool:
    return t.source in X.initial and t.target in X.accepting


# labels


class _Run:
    """Incremental label of a track: occurrences of events and their relations."""

    __slots__ = ("labels", "prec", "evord", "active", "done", "sources", "count")

    def __init__(self):
        self.labels = {}
        self.prec = set()
        self.evord = set()
        self.active = {}
        self.done = []
        self.sources = []
        self.count = {}

    def copy(self):
        r = _Run()
        r.labels = dict(self.labels)
        r.prec = set(self.prec)
        r.evord = set(self.evord)
        r.active = dict(self.active)
        r.done = list(self.done)
        r.sources = list(self.sources)
        r.count = dict(self.count)
        return r

    def start(self, event, label):
        k = self.count.get(event, 0) + 1
        self.count[event] = k
        o = f"{event}.{k}"
        self.labels[o] = label
        self.prec.update((d, o) for d in self.done)
        self.active[event] = o
        return o

    def stop(self, event):
        self.done.append(self.active.pop(event))

    def visit(self, events):
        occ = [self.active[e] for e in events]
        for i in range(len(occ)):
            for j in range(i + 1, len(occ)):
                self.evord.add((occ[i], occ[j]))

    def ipomset(self) -> Ipomset:
        from .ipomset import transitive_closure

        el = list(self.labels)
        return Ipomset(
            el,
            self.labels,
            self.prec,
            transitive_closure(self.evord, el),
            self.sources,
            self.active.values(),
        )


def _begin(X: HDA, x) -> _Run:
    run = _Run()
    for e, l in zip(X.event_tuple(x), X.label(x)):
        run.sources.append(run.start(e, l))
    run.visit(X.event_tuple(x))
    return run


def _advance(X: HDA, run: _Run, a, b, step: Step):
    if step.kind == "lower":
        ev, lab = X.event_tuple(b), X.label(b)
        for i in sorted(step.indices):
            run.start(ev[i - 1], lab[i - 1])
        run.visit(ev)
    else:
        ev = X.event_tuple(a)
        for i in sorted(step.indices):
            run.stop(ev[i - 1])
        run.visit(X.event_tuple(b))


def track_label(X: HDA, t: Track) -> Ipomset:
    """Label of a track.  Event occurrences are named ``<event>.<k>``.

    Events of the first cell are sources, events of the last cell are
    targets, an occurrence precedes every occurrence started after it
    ended, and the event order is generated by the visited cells.
    """
    run = _begin(X, t.cells[0])
    for a, b, s in zip(t.cells, t.cells[1:], t.steps):
        _advance(X, run, a, b, s)
    return run.ipomset()


# filling


def fill(X: HDA, t: Track) -> Track:
    """Refine every step into elementary ones; repeated cells are dropped."""
    C = X.complex
    cells = [t.cells[0]]
    for a, b, s in zip(t.cells, t.cells[1:], t.steps):
        if not s.indices:
            continue
        A = sorted(s.indices)
        if s.kind == "lower":
            for k in range(len(A) - 1, 0, -1):
                cells.append(face(C, b, A[:k], 0))
        else:
            for k in range(1, len(A)):
                cells.append(face(C, a, A[:k], 1))
        cells.append(b)
    return validate_track(X, cells)


# canonical track in a track object


def canonical_track(BP: TrackObject) -> Track:
    """A track from the start to the accept cell of ``□P`` labelled by ``P``.

    It walks through the maximal antichains of ``P``: the cell for the
    ``k``-th antichain runs its events, finished events are ``1`` and later
    events ``0``; between two antichains sits the cell running their
    intersection.  Consecutive repeats are removed.
    """
    P = BP.ipomset
    if not is_interval(P):
        raise NotInterval("precedence order contains 2+2")
    chains = maximal_antichains(P)
    seen = set()
    cells = [BP.initial[0]]

    def cell(running, finished):
        return BP.cell_of(
            {p: EXEC if p in running else ONE if p in finished else ZERO for p in BP.order}
        )

    for k, U in enumerate(chains):
        seen |= U
        cells.append(cell(U, seen - U))
        if k + 1 < len(chains):
            I = U & chains[k + 1]
            cells.append(cell(I, seen - I))
    cells.append(BP.accepting[0])
    out = [cells[0]]
    for c in cells[1:]:
        if c != out[-1]:
            out.append(c)
    return validate_track(BP, out)


# enumeration


def _moves(X: HDA, x, cof):
    C = X.complex
    for y, A in cof[x]:
        if len(A) == 1:
            yield y, Step("lower", A)
    for i in range(1, C.dim(x) + 1):
        yield C.delta(x, i, 1), Step("upper", frozenset([i]))


def enumerate_accepting_tracks(X: HDA, max_steps: int) -> Iterator[Track]:
    """All full accepting tracks with at most ``max_steps`` steps, depth first."""
    cof = lower_cofaces(X.complex)
    acc = set(X.accepting)
    cells, steps = [], []

    def go(x):
        if x in acc:
            yield Track(tuple(cells), tuple(steps))
        if len(steps) == max_steps:
            return
        for y, s in _moves(X, x, cof):
            cells.append(y)
            steps.append(s)
            yield from go(y)
            cells.pop()
            steps.pop()

    for x0 in X.initial:
        cells.append(x0)
        yield from go(x0)
        cells.pop()


def carrier_track(X: HDA, cells: Sequence) -> Track:
    """A track through a sequence of cells, dropping immediate repeats."""
    out = [cells[0]]
    for c in cells[1:]:
        if c != out[-1]:
            out.append(c)
    return validate_track(X, out)
