"""Small example HDAs and ipomsets, built from cubes in an integer grid.

A grid cell is a unit cube given by its lower corner and the axes along
which it extends.  Its id lists one entry per axis, ``"0-1"`` for an
extended axis and ``"0"`` for a fixed one, joined by dots.  Axis 0 is the
first coordinate, so horizontal in pictures.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .hda import HDA, make_hda
from .ipomset import Ipomset, validate_ipomset
from .precubical import validate_precubical


def grid_id(corner, axes) -> str:
    parts = []
    for k, c in enumerate(corner):
        parts.append(f"{c}-{c + 1}" if k in axes else f"{c}")
    return ".".join(parts)


def parse_grid_id(cid: str):
    corner, axes = [], []
    for k, part in enumerate(cid.split(".")):
        if "-" in part:
            lo = part.split("-")[0]
            corner.append(int(lo))
            axes.append(k)
        else:
            corner.append(int(part))
    return tuple(corner), tuple(axes)


class GridHDA(HDA):
    """An HDA whose cells come with positions in ``R^n`` for drawing."""

    def __init__(self, H: HDA, shape: dict):
        super().__init__(H.complex, H.labeling, H.events, H.initial, H.accepting)
        self.shape = shape

    def realize(self, cell, coords) -> tuple:
        """Point of ``R^n`` for local coordinates ``coords`` in ``cell``."""
        corner, axes = self.shape[cell]
        p = [Fraction(c) for c in corner]
        for a, t in zip(axes, coords):
            p[a] += Fraction(t)
        return tuple(p)


def grid_hda(
    cubes: Iterable,
    labels: Mapping[str, str],
    initial: Iterable[str] = (),
    accepting: Iterable[str] = (),
    identify: Iterable = (),
) -> GridHDA:
    """Build an HDA from top cubes ``(corner, axes)`` and their faces.

    ``identify`` lists pairs of cell ids to glue; faces of glued cells are
    glued as well and the first id of each pair names the result.  Edge
    labels missing from ``labels`` are copied across squares.
    """
    shape = {}
    todo = [(tuple(c), tuple(sorted(a))) for c, a in cubes]
    while todo:
        corner, axes = todo.pop()
        cid = grid_id(corner, axes)
        if cid in shape:
            continue
        shape[cid] = (corner, axes)
        for k, a in enumerate(axes):
            rest = axes[:k] + axes[k + 1:]
            for nu in (0, 1):
                c2 = list(corner)
                c2[a] += nu
                todo.append((tuple(c2), rest))

    def faces_of(cid):
        corner, axes = shape[cid]
        out = []
        for k, a in enumerate(axes):
            rest = axes[:k] + axes[k + 1:]
            for nu in (0, 1):
                c2 = list(corner)
                c2[a] += nu
                out.append(grid_id(c2, rest))
        return out

    parent = {c: c for c in shape}

    def find(c):
        while parent[c] != c:
            c = parent[c]
        return c

    pending = [tuple(p) for p in identify]
    while pending:
        a, b = pending.pop(0)
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if len(shape[ra][1]) != len(shape[rb][1]):
            raise ValueError(f"cannot identify {a!r} with {b!r}: dimensions differ")
        parent[rb] = ra
        pending.extend(zip(faces_of(ra), faces_of(rb)))

    def sort_key(c):
        corner, axes = shape[c]
        return (len(axes), corner[::-1], axes)

    reps = sorted({find(c) for c in shape}, key=sort_key)
    dims = {c: len(shape[c][1]) for c in reps}
    faces = {}
    for c in reps:
        fs = faces_of(c)
        for i in range(1, dims[c] + 1):
            for nu in (0, 1):
                faces[(c, i, nu)] = find(fs[2 * (i - 1) + nu])
    X = validate_precubical(dims, faces)

    edge_labels = {}
    for e, l in labels.items():
        r = find(e)
        if edge_labels.get(r, l) != l:
            raise ValueError(f"conflicting labels on identified edge {r!r}")
        edge_labels[r] = l
    changed = True
    while changed:
        changed = False
        for sq in X.cells(2):
            for i in (1, 2):
                a, b = X.delta(sq, i, 0), X.delta(sq, i, 1)
                if a in edge_labels and b not in edge_labels:
                    edge_labels[b] = edge_labels[a]
                    changed = True
                elif b in edge_labels and a not in edge_labels:
                    edge_labels[a] = edge_labels[b]
                    changed = True
    H = make_hda(X, edge_labels, [find(c) for c in initial], [find(c) for c in accepting])
    return GridHDA(H, {c: shape[c] for c in reps})


def rectangle(width: int, height: int, squares: Iterable, col_labels, row_labels,
              initial=("0.0",), accepting=None) -> GridHDA:
    """A ``width`` x ``height`` grid with all edges and the given squares.

    Horizontal edges in column ``i`` are labelled ``col_labels[i]`` and
    vertical edges in row ``j`` ``row_labels[j]``.
    """
    cubes = []
    for i in range(width + 1):
        for j in range(height + 1):
            if i < width:
                cubes.append(((i, j), (0,)))
            if j < height:
                cubes.append(((i, j), (1,)))
    cubes += [((i, j), (0, 1)) for i, j in squares]
    labels = {}
    for i in range(width):
        for j in range(height + 1):
            labels[grid_id((i, j), (0,))] = col_labels[i]
    for i in range(width + 1):
        for j in range(height):
            labels[grid_id((i, j), (1,))] = row_labels[j]
    if accepting is None:
        accepting = (f"{width}.{height}",)
    return grid_hda(cubes, labels, initial, accepting)


# HDAs from pictures


def a_par_cd() -> GridHDA:
    """Two squares side by side: ``c`` then ``d`` horizontally, ``a`` vertically."""
    return rectangle(2, 1, [(0, 0), (1, 0)], "cd", "a", accepting=("2.1",))


def loop(swap_vertical: bool = False) -> GridHDA:
    """Four squares with the bottom left edge glued to the top right edge.

    With ``swap_vertical`` the labels ``c`` and ``d`` trade places; this
    is the variant used for the loop d-path.
    """
    lo, hi = ("c", "d") if swap_vertical else ("d", "c")
    cubes = [((0, 0), (0, 1)), ((1, 0), (0, 1)), ((1, 1), (0, 1)), ((2, 1), (0, 1))]
    labels = {
        "0-1.0": "a",
        "1-2.0": "b",
        "0-1.1": "a",
        "2-3.1": "a",
        "1-2.2": "b",
        "0.0-1": lo,
        "2.0-1": lo,
        "1.1-2": hi,
        "3.1-2": hi,
    }
    return grid_hda(
        cubes, labels, initial=["0.1"], accepting=["3.1"], identify=[("0-1.0", "2-3.2")]
    )


def interleaving_square() -> GridHDA:
    """Hollow square with edges a, b, b, a: four distinct events."""
    return rectangle(1, 1, [], "a", "b")


def concurrent_square() -> GridHDA:
    """Filled square a∥b: two events."""
    return rectangle(1, 1, [(0, 0)], "a", "b")


def filled_square() -> GridHDA:
    return concurrent_square()


def hollow_square() -> GridHDA:
    return interleaving_square()


def self_linked_squares():
    """Three squares in a row with the left edge glued to the last bottom edge.

    This is a valid precubical set that is not event consistent.  Returns
    the complex and the ids of the squares ``x, y, z``.
    """
    from .precubical import validate_precubical as _v

    H_cubes = [((0, 0), (0, 1)), ((1, 0), (0, 1)), ((2, 0), (0, 1))]
    shape = {}
    todo = list(H_cubes)
    while todo:
        corner, axes = todo.pop()
        cid = grid_id(corner, axes)
        if cid in shape:
            continue
        shape[cid] = (corner, axes)
        for k, a in enumerate(axes):
            rest = axes[:k] + axes[k + 1:]
            for nu in (0, 1):
                c2 = list(corner)
                c2[a] += nu
                todo.append((tuple(c2), rest))
    # left edge 0.0-1 of x is glued onto bottom edge 2-3.0 of z
    glue = {"0.0-1": "2-3.0", "0.0": "2.0", "0.1": "3.0"}
    find = lambda c: glue.get(c, c)
    dims, faces = {}, {}
    for cid, (corner, axes) in shape.items():
        if cid in glue:
            continue
        dims[cid] = len(axes)
        for k, a in enumerate(axes):
            rest = axes[:k] + axes[k + 1:]
            for nu in (0, 1):
                c2 = list(corner)
                c2[a] += nu
                faces[(cid, k + 1, nu)] = find(grid_id(c2, rest))
    return _v(dims, faces), ("0-1.0-1", "1-2.0-1", "2-3.0-1")


def track_picture() -> GridHDA:
    """An edge ``a``, then a cube on ``b, d, c``, then a square adding ``e``.

    Used for the track example: vertex, edge, vertex, cube, edge, square.
    """
    cubes = [
        ((0, 0, 0, 0), (0,)),
        ((1, 0, 0, 0), (1, 2, 3)),
        ((1, 1, 1, 0), (2, 3)),
    ]
    labels = {
        "0-1.0.0.0": "a",
        "1.0-1.0.0": "d",
        "1.0.0-1.0": "b",
        "1.0.0.0-1": "c",
        "1.1.1.0-1": "c",
        "1.1.1-2.0": "e",
    }
    return grid_hda(cubes, labels, initial=["0.0.0.0"], accepting=["1.1.2.1"])


def three_squares() -> GridHDA:
    """Three squares in a row, labelled a b c horizontally and d vertically."""
    return rectangle(3, 1, [(0, 0), (1, 0), (2, 0)], "abc", "d", accepting=("3.1",))


# ipomsets from pictures


def ipomset_N(interfaces: bool = False) -> Ipomset:
    """``a<b``, ``c<b``, ``c<d``; optionally with source ``a`` and target ``d``."""
    return validate_ipomset(
        "abcd",
        {x: x for x in "abcd"},
        [("a", "b"), ("c", "b"), ("c", "d")],
        [("c", "a"), ("d", "a"), ("d", "b")],
        ["a"] if interfaces else [],
        ["d"] if interfaces else [],
    )


def ipomset_2p2() -> Ipomset:
    """Two parallel chains ``a<b`` and ``c<d``: the smallest non-interval order."""
    return validate_ipomset(
        "abcd",
        {x: x for x in "abcd"},
        [("a", "b"), ("c", "d")],
        [("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")],
    )


def a_par_cd_pomsets() -> list:
    """The six pomsets generated by :func:`a_par_cd`.

    Concurrent pairs are ordered with the horizontal event first.
    """
    lab = {"a": "a", "c": "c", "d": "d"}
    ev = [("c", "a"), ("d", "a")]
    specs = [
        [("c", "d")],
        [("a", "d"), ("c", "d")],
        [("c", "a"), ("c", "d")],
        [("a", "c"), ("c", "d")],
        [("c", "a"), ("a", "d"), ("c", "d")],
        [("c", "d"), ("d", "a")],
    ]
    out = []
    for prec in specs:
        closed = {p for p in prec}
        evs = [p for p in ev if p not in closed and p[::-1] not in closed]
        out.append(validate_ipomset("acd", lab, prec, evs))
    return out


def loop_second_pomset() -> Ipomset:
    """The pomset from traversing squares z, w, x, y of :func:`loop`."""
    el = ["a1", "b1", "a2", "b2", "a3", "c", "d"]
    lab = {x: x[0] for x in el}
    prec = [
        ("a1", "b1"), ("b1", "a2"), ("a2", "b2"), ("b2", "a3"),
        ("a1", "c"), ("b1", "d"), ("c", "d"), ("c", "b2"), ("d", "a3"),
    ]
    ev = [("b1", "c"), ("a2", "c"), ("a2", "d"), ("b2", "d")]
    return validate_ipomset(el, lab, prec, ev)
