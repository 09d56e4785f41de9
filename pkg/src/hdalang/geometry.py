"""Piecewise linear directed paths in the geometric realization of an HDA.

A d-path is a list of segments; each segment lies in one cell and lists
waypoints in that cell's local coordinates.  Global time gives every
segment the same share of ``[0, 1]`` and spaces the waypoints of a segment
evenly inside its share.  All arithmetic uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import Discontinuous, NotATrack, NotDirected
from .hda import HDA
from .ipomset import Ipomset, transitive_closure
from .track import Track, carrier_track, validate_track

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PLPoint:
    cell: str
    coords: tuple


@dataclass(frozen=True)
class Segment:
    cell: str
    waypoints: tuple


@dataclass(frozen=True)
class DPath:
    segments: tuple

    def __len__(self):
        return len(self.segments)


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def __contains__(self, t) -> bool:
        return (self.lo < t or (self.lo == t and self.lo_closed)) and (
            t < self.hi or (t == self.hi and self.hi_closed)
        )

    def __str__(self):
        return (
            ("[" if self.lo_closed else "(")
            + f"{self.lo},{self.hi}"
            + ("]" if self.hi_closed else ")")
        )

    def before(self, other: "Interval") -> bool:
        """Every point of ``self`` is smaller than every point of ``other``."""
        if self.hi < other.lo:
            return True
        return self.hi == other.lo and not (self.hi_closed and other.lo_closed)

    def meets(self, other: "Interval") -> bool:
        return not self.before(other) and not other.before(self)


def interval(text: str) -> Interval:
    """Parse ``"[0,1/6)"`` style notation."""
    text = text.strip()
    lo, hi = text[1:-1].split(",")
    return Interval(Fraction(lo), Fraction(hi), text[0] == "[", text[-1] == "]")


def carrier(X: HDA, cell, coords) -> PLPoint:
    """Normalize a point so that every coordinate is strictly inside ``(0,1)``."""
    coords = [Fraction(c) for c in coords]
    if len(coords) != X.dim(cell):
        raise ValueError(f"{len(coords)} coordinates for a {X.dim(cell)}-cell")
    for i in range(len(coords) - 1, -1, -1):
        c = coords[i]
        if c < 0 or c > 1:
            raise ValueError(f"coordinate {c} outside [0,1]")
        if c in (0, 1):
            cell = X.delta(cell, i + 1, int(c))
            del coords[i]
    return PLPoint(cell, tuple(coords))


def make_dpath(X: HDA, segments: Iterable) -> DPath:
    """Validate ``(cell, waypoints)`` pairs and build a d-path."""
    segs = []
    for cell, pts in segments:
        if cell not in X:
            raise NotATrack(f"unknown cell {cell!r}")
        pts = tuple(tuple(Fraction(c) for c in p) for p in pts)
        if not pts:
            raise NotDirected(f"segment in {cell!r} has no waypoints")
        n = X.dim(cell)
        for p in pts:
            if len(p) != n or any(c < 0 or c > 1 for c in p):
                raise ValueError(f"bad waypoint {p} in {n}-cell {cell!r}")
        for p, q in zip(pts, pts[1:]):
            if any(b < a for a, b in zip(p, q)):
                raise NotDirected(f"segment in {cell!r} decreases from {p} to {q}")
        segs.append(Segment(cell, pts))
    if not segs:
        raise NotDirected("a d-path has at least one segment")
    for s, t in zip(segs, segs[1:]):
        a = carrier(X, s.cell, s.waypoints[-1])
        b = carrier(X, t.cell, t.waypoints[0])
        if a != b:
            raise Discontinuous(f"segment in {s.cell!r} ends at {a} but next starts at {b}")
    return DPath(tuple(segs))


def _pieces(alpha: DPath):
    """Linear pieces ``(cell, t0, t1, p0, p1)`` over global time."""
    m = len(alpha.segments)
    out = []
    for k, seg in enumerate(alpha.segments):
        t0, span = Fraction(k, m), Fraction(1, m)
        pts = seg.waypoints
        if len(pts) == 1:
            out.append((seg.cell, t0, t0 + span, pts[0], pts[0]))
            continue
        r = len(pts) - 1
        for j in range(r):
            out.append((seg.cell, t0 + span * j / r, t0 + span * (j + 1) / r, pts[j], pts[j + 1]))
    return out


def point_at(X: HDA, alpha: DPath, t) -> PLPoint:
    t = Fraction(t)
    for cell, t0, t1, p, q in _pieces(alpha):
        if t0 <= t <= t1:
            s = (t - t0) / (t1 - t0)
            return carrier(X, cell, [a + (b - a) * s for a, b in zip(p, q)])
    raise ValueError(f"time {t} outside [0,1]")


def _active(a, b, t0, t1):
    """Where ``0 < a + (b-a)s < 1`` for ``s`` in ``[0,1]``, mapped to ``[t0,t1]``."""
    if a == b:
        return Interval(t0, t1, True, True) if 0 < a < 1 else None
    d = b - a
    s_lo, s_hi = -a / d, (1 - a) / d
    lo, lo_c = (Fraction(0), True) if s_lo < 0 else (s_lo, False)
    hi, hi_c = (Fraction(1), True) if s_hi > 1 else (s_hi, False)
    if lo > hi or (lo == hi and not (lo_c and hi_c)):
        return None
    return Interval(t0 + (t1 - t0) * lo, t0 + (t1 - t0) * hi, lo_c, hi_c)


def _merge(parts: list) -> list:
    parts = sorted(parts, key=lambda I: (I.lo, not I.lo_closed))
    out = []
    for I in parts:
        if out:
            J = out[-1]
            touching = J.hi > I.lo or (J.hi == I.lo and (J.hi_closed or I.lo_closed))
            if touching:
                if I.hi > J.hi or (I.hi == J.hi and I.hi_closed):
                    out[-1] = Interval(J.lo, I.hi, J.lo_closed, I.hi_closed)
                continue
        out.append(I)
    return out


def interval_arrangement(X: HDA, alpha: DPath) -> dict:
    """Maximal activity intervals of each event, in increasing order.

    Components that are single points are dropped; they cannot arise from
    a continuous path that actually runs an event.
    """
    parts = {}
    for cell, t0, t1, p, q in _pieces(alpha):
        for e, a, b in zip(X.event_tuple(cell), p, q):
            I = _active(a, b, t0, t1)
            if I is not None:
                parts.setdefault(e, []).append(I)
    out = {}
    for e in sorted(parts):
        comps = [I for I in _merge(parts[e]) if I.lo < I.hi]
        if comps:
            out[e] = comps
    return out


def _segment_at(alpha: DPath, t) -> str:
    m = len(alpha.segments)
    k = min(int(t * m), m - 1)
    return alpha.segments[k].cell


def dpath_label(X: HDA, alpha: DPath) -> Ipomset:
    """Ipomset of activity components: ``(e, i)`` is named ``<e>.<i>``."""
    arr = interval_arrangement(X, alpha)
    comps = {}
    labels = {}
    for e, Is in arr.items():
        for i, I in enumerate(Is, 1):
            o = f"{e}.{i}"
            comps[o] = (e, I)
            labels[o] = X.event_label(e)
    el = list(comps)
    prec, evord = set(), set()
    for o1 in el:
        e1, I1 = comps[o1]
        for o2 in el:
            if o1 == o2:
                continue
            e2, I2 = comps[o2]
            if I1.before(I2):
                prec.add((o1, o2))
            elif e1 != e2 and I1.meets(I2) and o1 < o2:
                lo = max(I1.lo, I2.lo)
                hi = min(I1.hi, I2.hi)
                t = (lo + hi) / 2
                ev = X.event_tuple(_segment_at(alpha, t))
                if ev.index(e1) < ev.index(e2):
                    evord.add((o1, o2))
                else:
                    evord.add((o2, o1))
    src = [o for o in el if 0 in comps[o][1]]
    tgt = [o for o in el if 1 in comps[o][1]]
    return Ipomset(el, labels, prec, transitive_closure(evord, el), src, tgt)


def track_to_center_path(X: HDA, rho: Track) -> DPath:
    """A d-path through the centres of the cells of a track.

    A lower step enters the larger cell at ``0`` in the new coordinates and
    moves them to ``1/2``; an upper step moves the finished coordinates from
    ``1/2`` to ``1`` inside the larger cell.
    """
    segs = []
    if not rho.steps:
        x = rho.cells[0]
        segs.append((x, [tuple([HALF] * X.dim(x))]))
    for a, b, s in zip(rho.cells, rho.cells[1:], rho.steps):
        if s.kind == "lower":
            n = X.dim(b)
            start = tuple(Fraction(0) if i in s.indices else HALF for i in range(1, n + 1))
            segs.append((b, [start, tuple([HALF] * n)]))
        else:
            n = X.dim(a)
            end = tuple(Fraction(1) if i in s.indices else HALF for i in range(1, n + 1))
            segs.append((a, [tuple([HALF] * n), end]))
    return make_dpath(X, segs)


def dpath_to_track(X: HDA, alpha: DPath) -> Track:
    """Track through the carriers at breakpoints and inside linear pieces."""
    cells = []
    for cell, t0, t1, p, q in _pieces(alpha):
        mid = [(a + b) / 2 for a, b in zip(p, q)]
        for pt in (p, mid, q):
            cells.append(carrier(X, cell, pt).cell)
    return carrier_track(X, cells)


# text format


def parse_text(X: HDA, text: str) -> DPath:
    """``seg <cell>`` lines, each followed by waypoint lines of rationals;
    a waypoint in a vertex is written ``.``."""
    from .errors import FormatError

    segs = []
    for n, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] == "seg":
            if len(toks) != 2:
                raise FormatError("seg needs one cell id", n)
            segs.append((toks[1], []))
        else:
            if not segs:
                raise FormatError("waypoint before any seg line", n)
            if toks == ["."]:
                segs[-1][1].append(())
                continue
            try:
                segs[-1][1].append(tuple(Fraction(t) for t in toks))
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"bad rational in {raw.strip()!r}", n) from None
    return make_dpath(X, segs)


def to_text(alpha: DPath) -> str:
    lines = []
    for s in alpha.segments:
        lines.append(f"seg {s.cell}")
        lines += [" ".join(str(c) for c in p) if p else "." for p in s.waypoints]
    return "\n".join(lines) + "\n"


def format_arrangement(arr: dict, names: dict | None = None) -> str:
    lines = []
    for e, Is in arr.items():
        name = names.get(e, e) if names else e
        lines.append(f"J_{name} = " + " ∪ ".join(str(I) for I in Is))
    return "\n".join(lines) + "\n"
