"""Precubical sets, universal events and labelings.

Cells carry string ids.  Face maps are indexed from 1: ``delta(x, i, nu)``
is the face of ``x`` obtained by fixing coordinate ``i`` to ``nu``.
Coordinate 1 is the horizontal one in pictures, so for a square ``x``
``delta(x, 1, 0)`` is its left edge and ``delta(x, 2, 0)`` its bottom edge.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    BadDimension,
    DanglingFace,
    IdentityViolation,
    InconsistentEdgeLabels,
    IndexOutOfRange,
    NotEventConsistent,
)
from .ipomset import LinearPomset

ZERO, EXEC, ONE = "0", "*", "1"
VALUES = (ZERO, EXEC, ONE)
# (value at p, value at q) allowed when p precedes q
ADMISSIBLE = frozenset(
    {(ZERO, ZERO), (EXEC, ZERO), (ONE, ZERO), (ONE, EXEC), (ONE, ONE)}
)


def admissible(u: str, v: str) -> bool:
    return (u, v) in ADMISSIBLE


class PrecubicalSet:
    """A finite precubical set.  Build instances with :func:`validate_precubical`."""

    __slots__ = ("_dim", "_faces")

    def __init__(self, dims: Mapping[str, int], faces: Mapping[str, tuple]):
        self._dim = dict(dims)
        self._faces = {x: tuple(f) for x, f in faces.items()}

    def __contains__(self, x):
        return x in self._dim

    def __len__(self):
        return len(self._dim)

    def __iter__(self):
        return iter(self._dim)

    def __eq__(self, other):
        if not isinstance(other, PrecubicalSet):
            return NotImplemented
        return self._dim == other._dim and self._faces == other._faces

    def __repr__(self):
        return f"PrecubicalSet(counts={self.counts()})"

    def dim(self, x) -> int:
        return self._dim[x]

    def cells(self, n: int | None = None) -> list:
        if n is None:
            return list(self._dim)
        return [x for x, d in self._dim.items() if d == n]

    def max_dim(self) -> int:
        return max(self._dim.values(), default=-1)

    def counts(self) -> tuple:
        c = [0] * (self.max_dim() + 1)
        for d in self._dim.values():
            c[d] += 1
        return tuple(c)

    def delta(self, x, i: int, nu: int):
        n = self._dim[x]
        if not 1 <= i <= n or nu not in (0, 1):
            raise IndexOutOfRange(f"face ({i}, {nu}) of {n}-cell {x!r}")
        return self._faces[x][2 * (i - 1) + nu]

    def face_table(self, x) -> tuple:
        return self._faces[x]


def validate_precubical(
    cells: Mapping[str, int], faces: Mapping[tuple, str]
) -> PrecubicalSet:
    """Check cells and face assignments ``(cell, i, nu) -> face``."""
    dims = dict(cells)
    for x, d in dims.items():
        if not isinstance(d, int) or d < 0:
            raise BadDimension(f"cell {x!r} has invalid dimension {d!r}")
    table = {}
    for (x, i, nu), y in faces.items():
        if x not in dims:
            raise DanglingFace(f"face of unknown cell {x!r}")
        if y not in dims:
            raise DanglingFace(f"face of {x!r} is unknown cell {y!r}")
        if not 1 <= i <= dims[x] or nu not in (0, 1):
            raise BadDimension(f"face index ({i}, {nu}) out of range for {x!r}")
        if dims[y] != dims[x] - 1:
            raise BadDimension(
                f"face ({i}, {nu}) of {dims[x]}-cell {x!r} has dimension {dims[y]}"
            )
        table[(x, i, nu)] = y
    out = {}
    for x, d in dims.items():
        row = []
        for i in range(1, d + 1):
            for nu in (0, 1):
                if (x, i, nu) not in table:
                    raise DanglingFace(f"cell {x!r} lacks face ({i}, {nu})")
                row.append(table[(x, i, nu)])
        out[x] = tuple(row)
    X = PrecubicalSet(dims, out)
    for x, d in dims.items():
        for i in range(1, d + 1):
            for j in range(i + 1, d + 1):
                for nu in (0, 1):
                    for mu in (0, 1):
                        lhs = X.delta(X.delta(x, j, mu), i, nu)
                        rhs = X.delta(X.delta(x, i, nu), j - 1, mu)
                        if lhs != rhs:
                            raise IdentityViolation(
                                f"cell {x!r}: d_{i}^{nu} d_{j}^{mu} = {lhs!r} "
                                f"but d_{j - 1}^{mu} d_{i}^{nu} = {rhs!r}"
                            )
    return X


def face(X: PrecubicalSet, x, A: Iterable[int], nu: int):
    """Iterated face ``δ_A^ν x``; indices are removed from the largest down."""
    A = sorted(set(A), reverse=True)
    n = X.dim(x)
    for a in A:
        if not 1 <= a <= n:
            raise IndexOutOfRange(f"index {a} out of range for {n}-cell {x!r}")
    for a in A:
        x = X.delta(x, a, nu)
    return x


def face_mixed(X: PrecubicalSet, x, fixed: Mapping[int, int]):
    """Face fixing coordinate ``i`` to ``fixed[i]`` for every key."""
    for a in sorted(fixed, reverse=True):
        x = X.delta(x, a, fixed[a])
    return x


def vertices_of(X: PrecubicalSet, x) -> tuple:
    """Bottom and top vertex of a cell."""
    n = X.dim(x)
    return face(X, x, range(1, n + 1), 0), face(X, x, range(1, n + 1), 1)


def edge_of(X: PrecubicalSet, x, i: int):
    """The edge of ``x`` in direction ``i`` starting at the bottom vertex."""
    n = X.dim(x)
    return face(X, x, [k for k in range(1, n + 1) if k != i], 0)


# cubes of value maps


def value_id(values) -> str:
    """Cell id of a value map: the values spelled out, ``-`` when empty."""
    return "".join(values) or "-"


def function_complex(elements, prec, evord_rank):
    """Precubical set of maps ``elements -> {0,*,1}`` admissible along ``prec``.

    Cell ids spell the values in the order of ``elements``.  The face
    ``δ_i^ν`` rewrites the ``i``-th ``*`` (ordered by ``evord_rank``) to ``ν``.
    Returns ``(PrecubicalSet, values)`` with ``values[id]`` a dict.
    """
    elements = list(elements)
    pos = {x: k for k, x in enumerate(elements)}
    after = {x: [] for x in elements}
    for a, b in prec:
        # check constraints when the later of the two positions is assigned
        if pos[a] < pos[b]:
            after[b].append((a, True))
        else:
            after[a].append((b, False))
    vecs = []
    cur = []

    def go(k):
        if k == len(elements):
            vecs.append(tuple(cur))
            return
        x = elements[k]
        for v in VALUES:
            good = True
            for y, y_before in after[x]:
                u = cur[pos[y]]
                if not (admissible(u, v) if y_before else admissible(v, u)):
                    good = False
                    break
            if good:
                cur.append(v)
                go(k + 1)
                cur.pop()

    go(0)
    order = {ZERO: 0, EXEC: 1, ONE: 2}
    vecs.sort(key=lambda v: (v.count(EXEC), [order[c] for c in v]))
    dims, faces, values = {}, {}, {}
    for v in vecs:
        cid = value_id(v)
        stars = sorted((x for x, c in zip(elements, v) if c == EXEC), key=evord_rank.__getitem__)
        dims[cid] = len(stars)
        values[cid] = dict(zip(elements, v))
        row = []
        for x in stars:
            for nu in (ZERO, ONE):
                w = list(v)
                w[pos[x]] = nu
                row.append(value_id(w))
        faces[cid] = tuple(row)
    return PrecubicalSet(dims, faces), values


def standard_cube(S: LinearPomset):
    """The standard cube on ``S`` and its top cell."""
    rank = {x: k for k, x in enumerate(S.elements)}
    X, _ = function_complex(S.elements, (), rank)
    return X, value_id([EXEC] * len(S))


# universal events


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


class UniversalEvents:
    """Event classes of edges and the event tuple of every cell."""

    def __init__(self, event_of_edge: dict, tuples: dict):
        self.event_of_edge = event_of_edge
        self.tuples = tuples

    def events(self) -> list:
        return sorted(set(self.event_of_edge.values()), key=lambda e: int(e[1:]))

    def edges_of(self, e) -> list:
        return [x for x, f in self.event_of_edge.items() if f == e]

    def __getitem__(self, x) -> tuple:
        return self.tuples[x]


def _relation_graph(X: PrecubicalSet) -> dict:
    adj = {x: [] for x in X.cells(1)}
    for sq in X.cells(2):
        for i in (1, 2):
            a, b = X.delta(sq, i, 0), X.delta(sq, i, 1)
            adj[a].append((b, sq, i))
            adj[b].append((a, sq, i))
    return adj


def _witness_chain(X, start, goal) -> list:
    """Shortest chain of edges linked by opposite faces of squares."""
    adj = _relation_graph(X)
    prev = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            break
        for y, sq, i in adj[x]:
            if y not in prev:
                prev[y] = (x, sq, i)
                queue.append(y)
    chain = []
    x = goal
    while prev[x] is not None:
        p, sq, i = prev[x]
        chain.append((x, sq, i))
        x = p
    chain.append((start, None, None))
    return list(reversed(chain))


def universal_events(X: PrecubicalSet) -> UniversalEvents:
    """Compute the universal events, or raise :class:`NotEventConsistent`."""
    edges = X.cells(1)
    uf = _UnionFind(edges)
    for sq in X.cells(2):
        for i in (1, 2):
            uf.union(X.delta(sq, i, 0), X.delta(sq, i, 1))
    for sq in X.cells(2):
        a, b = X.delta(sq, 1, 0), X.delta(sq, 2, 0)
        if uf.find(a) == uf.find(b):
            chain = _witness_chain(X, b, a)
            text = " ≈ ".join(e for e, _, _ in chain)
            raise NotEventConsistent(
                f"square {sq!r} has equivalent left and bottom edges: {text}",
                cell=sq,
                witness=[e for e, _, _ in chain],
            )
    names = {}
    event_of_edge = {}
    for e in edges:
        r = uf.find(e)
        if r not in names:
            names[r] = f"e{len(names)}"
        event_of_edge[e] = names[r]
    tuples = {}
    for x in X:
        n = X.dim(x)
        tup = tuple(event_of_edge[edge_of(X, x, i)] for i in range(1, n + 1))
        if len(set(tup)) != n:
            raise NotEventConsistent(f"cell {x!r} repeats an event: {tup}", cell=x)
        tuples[x] = tup
    return UniversalEvents(event_of_edge, tuples)


def is_event_consistent(X: PrecubicalSet) -> bool:
    try:
        universal_events(X)
    except NotEventConsistent:
        return False
    return True


# labelings


class Labeling:
    """Label tuples of all cells, extended from the edge labels."""

    def __init__(self, edge_labels: dict, tuples: dict):
        self.edge_labels = edge_labels
        self.tuples = tuples

    def __getitem__(self, x) -> tuple:
        return self.tuples[x]


def extend_labeling(X: PrecubicalSet, edge_labels: Mapping[str, str]) -> Labeling:
    for e in X.cells(1):
        if e not in edge_labels:
            raise InconsistentEdgeLabels(f"edge {e!r} has no label")
    for sq in X.cells(2):
        for i in (1, 2):
            a, b = X.delta(sq, i, 0), X.delta(sq, i, 1)
            if edge_labels[a] != edge_labels[b]:
                raise InconsistentEdgeLabels(
                    f"square {sq!r}: opposite edges {a!r} and {b!r} are labelled "
                    f"{edge_labels[a]!r} and {edge_labels[b]!r}"
                )
    tuples = {}
    for x in X:
        n = X.dim(x)
        tuples[x] = tuple(edge_labels[edge_of(X, x, i)] for i in range(1, n + 1))
    return Labeling({e: edge_labels[e] for e in X.cells(1)}, tuples)


def lower_cofaces(X: PrecubicalSet) -> dict:
    """Map ``x -> [(y, A)]`` with ``x = δ_A^0 y`` for nonempty ``A``."""
    out = {x: [] for x in X}
    for y in X:
        n = X.dim(y)
        for k in range(1, n + 1):
            for A in combinations(range(1, n + 1), k):
                out[face(X, y, A, 0)].append((y, frozenset(A)))
    return out


# text format


def parse_cells(lines):
    """Shared parser for ``cell``/``face``/``label`` lines.

    Returns ``(cells, faces, labels, extra)`` where ``extra`` keeps the
    lines with other keywords as ``(lineno, keyword, args)``.
    """
    from .errors import FormatError

    cells, faces, labels, extra = {}, {}, {}, []
    for n, raw in lines:
        kw, args = raw[0], raw[1:]
        if kw == "cell":
            if len(args) != 2:
                raise FormatError("cell needs an id and a dimension", n)
            try:
                d = int(args[1])
            except ValueError:
                raise FormatError(f"bad dimension {args[1]!r}", n) from None
            if args[0] in cells:
                raise FormatError(f"cell {args[0]!r} declared twice", n)
            cells[args[0]] = d
        elif kw == "face":
            if len(args) != 4:
                raise FormatError("face needs: cell index polarity face", n)
            try:
                i, nu = int(args[1]), int(args[2])
            except ValueError:
                raise FormatError("face index and polarity must be integers", n) from None
            key = (args[0], i, nu)
            if key in faces:
                raise FormatError(f"face {key} given twice", n)
            faces[key] = args[3]
        elif kw == "label":
            if len(args) != 2:
                raise FormatError("label needs an edge and a symbol", n)
            labels[args[0]] = args[1]
        else:
            extra.append((n, kw, args))
    return cells, faces, labels, extra


def tokenized_lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            yield n, toks


def parse_text(text: str) -> PrecubicalSet:
    from .errors import FormatError

    cells, faces, labels, extra = parse_cells(tokenized_lines(text))
    if extra:
        n, kw, _ = extra[0]
        raise FormatError(f"unknown keyword {kw!r}", n)
    return validate_precubical(cells, faces)


def to_text(X: PrecubicalSet, edge_labels: Mapping | None = None) -> str:
    lines = [f"cell {x} {X.dim(x)}" for x in X]
    for x in X:
        for i in range(1, X.dim(x) + 1):
            for nu in (0, 1):
                lines.append(f"face {x} {i} {nu} {X.delta(x, i, nu)}")
    if edge_labels:
        lines += [f"label {e} {edge_labels[e]}" for e in X.cells(1) if e in edge_labels]
    return "\n".join(lines) + "\n"


def parse_text_lenient(text: str) -> PrecubicalSet:
    """Like :func:`parse_text` but skips labels and start/accept lines."""
    from .errors import FormatError

    cells, faces, _, extra = parse_cells(tokenized_lines(text))
    for n, kw, _ in extra:
        if kw not in ("initial", "accepting"):
            raise FormatError(f"unknown keyword {kw!r}", n)
    return validate_precubical(cells, faces)
