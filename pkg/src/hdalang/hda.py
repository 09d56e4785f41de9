"""Higher-dimensional automata, their maps, and the track object of an ipomset."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import (
    BudgetExceeded,
    FaceNonCommuting,
    FormatError,
    HDAError,
    InterfaceBroken,
    LabelBroken,
    MapError,
)
from .ipomset import (
    Ipomset,
    LinearPomset,
    canonical_order,
    discrete,
    glue_with_maps,
)
from .precubical import (
    EXEC,
    ONE,
    ZERO,
    Labeling,
    PrecubicalSet,
    UniversalEvents,
    extend_labeling,
    face_mixed,
    function_complex,
    parse_cells,
    tokenized_lines,
    universal_events,
    validate_precubical,
    value_id,
)

DEFAULT_BUDGET = 10**6


class HDA:
    """An event consistent labelled precubical set with start and accept cells."""

    def __init__(
        self,
        complex: PrecubicalSet,
        labeling: Labeling,
        events: UniversalEvents,
        initial: Iterable,
        accepting: Iterable,
    ):
        self.complex = complex
        self.labeling = labeling
        self.events = events
        self.initial = tuple(dict.fromkeys(initial))
        self.accepting = tuple(dict.fromkeys(accepting))

    def __repr__(self):
        return (
            f"HDA(counts={self.complex.counts()}, initial={list(self.initial)}, "
            f"accepting={list(self.accepting)})"
        )

    def __contains__(self, x):
        return x in self.complex

    def cells(self, n=None):
        return self.complex.cells(n)

    def dim(self, x):
        return self.complex.dim(x)

    def delta(self, x, i, nu):
        return self.complex.delta(x, i, nu)

    def label(self, x) -> tuple:
        return self.labeling[x]

    def event_tuple(self, x) -> tuple:
        return self.events[x]

    def cell_label(self, x) -> LinearPomset:
        return LinearPomset(self.events[x], self.labeling[x])

    def event_label(self, e) -> str:
        edge = self.events.edges_of(e)[0]
        return self.labeling.edge_labels[edge]

    @property
    def edge_labels(self) -> dict:
        return self.labeling.edge_labels


def make_hda(
    complex: PrecubicalSet,
    edge_labels: Mapping[str, str],
    initial: Iterable = (),
    accepting: Iterable = (),
) -> HDA:
    initial, accepting = list(initial), list(accepting)
    for x in initial + accepting:
        if x not in complex:
            raise HDAError(f"start or accept cell {x!r} is not a cell")
    events = universal_events(complex)
    labeling = extend_labeling(complex, edge_labels)
    return HDA(complex, labeling, events, initial, accepting)


def cell_label(X: HDA, x) -> LinearPomset:
    return X.cell_label(x)


# maps


def validate_map(f: Mapping, X: HDA, Y: HDA, interfaces: bool = True) -> dict:
    """Check that ``f`` is an HDA map ``X -> Y``.

    With ``interfaces=False`` only the labelled precubical structure is
    checked.
    """
    f = dict(f)
    for x in X.cells():
        if x not in f:
            raise MapError(f"cell {x!r} has no image")
        y = f[x]
        if y not in Y:
            raise MapError(f"image {y!r} of {x!r} is not a cell")
        if X.dim(x) != Y.dim(y):
            raise MapError(f"{x!r} and its image {y!r} differ in dimension")
    for x in X.cells():
        y = f[x]
        for i in range(1, X.dim(x) + 1):
            for nu in (0, 1):
                if f[X.delta(x, i, nu)] != Y.delta(y, i, nu):
                    raise FaceNonCommuting(f"face ({i}, {nu}) of {x!r}")
        if X.label(x) != Y.label(y):
            raise LabelBroken(f"{x!r} is labelled {X.label(x)} but {y!r} is {Y.label(y)}")
    if interfaces:
        for x in X.initial:
            if f[x] not in Y.initial:
                raise InterfaceBroken(f"start cell {x!r} maps to {f[x]!r}")
        for x in X.accepting:
            if f[x] not in Y.accepting:
                raise InterfaceBroken(f"accept cell {x!r} maps to {f[x]!r}")
    return f


def compose_maps(f: Mapping, g: Mapping) -> dict:
    return {x: g[y] for x, y in f.items()}


# constructions


def coproduct(*hdas: HDA) -> HDA:
    """Disjoint union; cells of the ``k``-th summand get the prefix ``k.``."""
    dims, faces, labels, init, acc = {}, {}, {}, [], []
    for k, X in enumerate(hdas):
        rn = lambda x, k=k: f"{k}.{x}"
        for x in X.cells():
            dims[rn(x)] = X.dim(x)
            for i in range(1, X.dim(x) + 1):
                for nu in (0, 1):
                    faces[(rn(x), i, nu)] = rn(X.delta(x, i, nu))
        for e, l in X.edge_labels.items():
            labels[rn(e)] = l
        init += [rn(x) for x in X.initial]
        acc += [rn(x) for x in X.accepting]
    return make_hda(validate_precubical(dims, faces), labels, init, acc)


def empty_hda() -> HDA:
    return make_hda(validate_precubical({}, {}), {}, (), ())


def pair_id(x, y) -> str:
    return f"({x},{y})"


def tensor(X: HDA, Y: HDA) -> HDA:
    """Tensor product; coordinates of ``X`` come before those of ``Y``."""
    dims, faces, labels = {}, {}, {}
    for x in X.cells():
        for y in Y.cells():
            c = pair_id(x, y)
            m, n = X.dim(x), Y.dim(y)
            dims[c] = m + n
            for i in range(1, m + n + 1):
                for nu in (0, 1):
                    if i <= m:
                        faces[(c, i, nu)] = pair_id(X.delta(x, i, nu), y)
                    else:
                        faces[(c, i, nu)] = pair_id(x, Y.delta(y, i - m, nu))
            if m + n == 1:
                labels[c] = (X.label(x) + Y.label(y))[0]
    init = [pair_id(x, y) for x in X.initial for y in Y.initial]
    acc = [pair_id(x, y) for x in X.accepting for y in Y.accepting]
    return make_hda(validate_precubical(dims, faces), labels, init, acc)


class TrackObject(HDA):
    """The HDA ``□P`` whose cells are admissible maps ``P -> {0,*,1}``.

    Cell ids spell the values along the canonical order of ``P``;
    ``values[id]`` gives the map as a dict.
    """

    def __init__(self, P, complex, labeling, events, initial, accepting, values, order):
        super().__init__(complex, labeling, events, initial, accepting)
        self.ipomset = P
        self.values = values
        self.order = order

    def cell_of(self, values: Mapping) -> str:
        return value_id([values[x] for x in self.order])


def track_object(P: Ipomset) -> TrackObject:
    order = canonical_order(P)
    rank = P.evord_rank()
    X, values = function_complex(order, P.prec, rank)
    labels = {}
    for c in X.cells(1):
        (x,) = [p for p in order if values[c][p] == EXEC]
        labels[c] = P.labels[x]
    init = value_id([EXEC if p in P.sources else ZERO for p in order])
    acc = value_id([EXEC if p in P.targets else ONE for p in order])
    H = make_hda(X, labels, [init], [acc])
    return TrackObject(P, H.complex, H.labeling, H.events, [init], [acc], values, order)


def standard_cube_hda(S: LinearPomset) -> TrackObject:
    """The standard cube on ``S`` as an HDA with its bottom and top corners."""
    return track_object(discrete(S, sources=(), targets=()))


def subsumption_to_map(f: Mapping, BQ: TrackObject, BP: TrackObject) -> dict:
    """Map ``□Q -> □P`` induced by a subsumption witness ``f: Q -> P``."""
    inv = {p: q for q, p in f.items()}
    return {
        c: BP.cell_of({p: BQ.values[c][inv[p]] for p in BP.order}) for c in BQ.cells()
    }


def pushout_embeddings(Q: Ipomset, R: Ipomset):
    """Embeddings of ``□Q`` and ``□R`` into ``□(Q * R)``.

    Cells of ``□Q`` are padded with ``0`` outside ``Q`` and cells of
    ``□R`` with ``1`` outside ``R``.  These are maps of labelled precubical
    sets; they do not preserve start and accept cells.
    """
    P, mq, mr = glue_with_maps(Q, R)
    BP, BQ, BR = track_object(P), track_object(Q), track_object(R)
    inv_q = {p: q for q, p in mq.items()}
    inv_r = {p: r for r, p in mr.items()}
    j0 = {
        c: BP.cell_of({p: BQ.values[c][inv_q[p]] if p in inv_q else ZERO for p in BP.order})
        for c in BQ.cells()
    }
    j1 = {
        c: BP.cell_of({p: BR.values[c][inv_r[p]] if p in inv_r else ONE for p in BP.order})
        for c in BR.cells()
    }
    return P, (BP, BQ, BR), j0, j1


def yoneda_map(X: HDA, x) -> tuple:
    """The map from the standard cube on ``ℓ(x)`` onto the cell ``x``."""
    cube = standard_cube_hda(X.cell_label(x))
    f = {}
    for c in cube.cells():
        vals = cube.values[c]
        fixed = {}
        for k, p in enumerate(cube.order, 1):
            if vals[p] != EXEC:
                fixed[k] = int(vals[p])
        f[c] = face_mixed(X.complex, x, fixed)
    return cube, f


# morphism search


def find_hda_map(X: HDA, Y: HDA, budget: int = DEFAULT_BUDGET):
    """Some HDA map ``X -> Y`` or ``None``; raises :class:`BudgetExceeded`.

    Cells of ``X`` are tried in decreasing dimension, cells with start or
    accept constraints first.  Choosing the image of a cell fixes the images
    of all its faces, which are propagated immediately.
    """
    init_x, acc_x = set(X.initial), set(X.accepting)
    init_y, acc_y = set(Y.initial), set(Y.accepting)
    by_key = {}
    for y in Y.cells():
        by_key.setdefault((Y.dim(y), Y.label(y)), []).append(y)

    def allowed(x, y):
        return (x not in init_x or y in init_y) and (x not in acc_x or y in acc_y)

    xs = sorted(
        X.cells(),
        key=lambda x: (-X.dim(x), not (x in init_x or x in acc_x)),
    )
    f = {}
    steps = [0]

    def assign(x, y, trail):
        stack = [(x, y)]
        while stack:
            steps[0] += 1
            if steps[0] > budget:
                raise BudgetExceeded(f"map search exceeded {budget} steps")
            a, b = stack.pop()
            if a in f:
                if f[a] != b:
                    return False
                continue
            if not allowed(a, b):
                return False
            f[a] = b
            trail.append(a)
            for i in range(1, X.dim(a) + 1):
                for nu in (0, 1):
                    stack.append((X.delta(a, i, nu), Y.delta(b, i, nu)))
        return True

    def go(k):
        while k < len(xs) and xs[k] in f:
            k += 1
        if k == len(xs):
            return True
        x = xs[k]
        for y in by_key.get((X.dim(x), X.label(x)), ()):
            trail = []
            if assign(x, y, trail) and go(k + 1):
                return True
            for a in trail:
                del f[a]
        return False

    return dict(f) if go(0) else None


# text format


def parse_text(text: str) -> HDA:
    cells, faces, labels, extra = parse_cells(tokenized_lines(text))
    init, acc = [], []
    for n, kw, args in extra:
        if kw in ("initial", "accepting"):
            if not args:
                raise FormatError(f"{kw} needs at least one cell id", n)
            (init if kw == "initial" else acc).extend(args)
        else:
            raise FormatError(f"unknown keyword {kw!r}", n)
    X = validate_precubical(cells, faces)
    return make_hda(X, labels, init, acc)


def to_text(X: HDA) -> str:
    C = X.complex
    lines = [f"cell {x} {C.dim(x)}" for x in C]
    for x in C:
        for i in range(1, C.dim(x) + 1):
            for nu in (0, 1):
                lines.append(f"face {x} {i} {nu} {C.delta(x, i, nu)}")
    lines += [f"label {e} {X.edge_labels[e]}" for e in C.cells(1)]
    lines += [f"initial {x}" for x in X.initial]
    lines += [f"accepting {x}" for x in X.accepting]
    return "\n".join(lines) + "\n"
