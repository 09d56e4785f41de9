"""Random generators and brute force oracles shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

from hdalang.gallery import loop, rectangle
from hdalang.geometry import carrier, make_dpath
from hdalang.ipomset import (
    Ipomset,
    LinearPomset,
    maximal_antichains,
    transitive_closure,
    validate_ipomset,
)
from hdalang.precubical import lower_cofaces


# ipomsets


def random_interval_ipomset(rng: random.Random, n_max=6, labels="abc", max_width=3,
                            interfaces=True) -> Ipomset:
    """Events are random integer intervals; ``x < y`` when ``x`` ends before ``y`` starts."""
    while True:
        n = rng.randint(1, n_max)
        spans = []
        for _ in range(n):
            s = rng.randint(0, 2 * n)
            spans.append((s, s + rng.randint(0, 3)))
        el = [f"x{k}" for k in range(n)]
        prec = [(el[i], el[j]) for i in range(n) for j in range(n) if spans[i][1] < spans[j][0]]
        order = el[:]
        rng.shuffle(order)
        evord = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n)]
        lab = {x: rng.choice(labels) for x in el}
        P = validate_ipomset(el, lab, prec, evord)
        if max(len(a) for a in maximal_antichains(P)) > max_width:
            continue
        if not interfaces:
            return P
        src = [x for x in P.minimal() if rng.random() < 0.3]
        tgt = [x for x in P.maximal() if rng.random() < 0.3]
        return validate_ipomset(el, lab, prec, evord, src, tgt)


def random_ipomset(rng: random.Random, n: int, source: LinearPomset | None = None,
                   labels="ab", p_edge=0.4, p_target=0.4, prefix="q") -> Ipomset:
    """A random ipomset, not necessarily interval.

    With ``source`` given, the source interface is a copy of it.
    """
    src = [] if source is None else [f"{prefix}s{k}" for k in range(len(source))]
    rest = [f"{prefix}{k}" for k in range(n)]
    el = src + rest
    lab = {x: rng.choice(labels) for x in rest}
    if source is not None:
        lab.update(zip(src, source.labels))
    order = rest[:]
    rng.shuffle(order)
    prec = []
    for x in src:
        for y in rest:
            if rng.random() < p_edge:
                prec.append((x, y))
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if rng.random() < p_edge:
                prec.append((order[i], order[j]))
    lin = el[:]
    rng.shuffle(lin)
    slots = [k for k, x in enumerate(lin) if x in src]
    for k, x in zip(slots, src):
        lin[k] = x
    evord = [(lin[i], lin[j]) for i in range(len(lin)) for j in range(i + 1, len(lin))]
    pc = transitive_closure(prec, el)
    maximal = [x for x in el if not any(a == x for a, _ in pc)]
    tgt = [x for x in maximal if rng.random() < p_target]
    return validate_ipomset(el, lab, prec, evord, src, tgt)


def random_tighten(rng: random.Random, P: Ipomset, tries=3) -> Ipomset:
    """Add random precedences while keeping the interfaces extremal."""
    prec = set(P.prec)
    el = list(P.elements)
    for _ in range(tries):
        x, y = rng.sample(el, 2) if len(el) >= 2 else (None, None)
        if x is None or (x, y) in prec or (y, x) in prec:
            continue
        if x in P.targets or y in P.sources:
            continue
        cand = transitive_closure(prec | {(x, y)}, el)
        if any((z, z) in cand for z in el):
            continue
        if any(b in P.sources for _, b in cand) or any(a in P.targets for a, _ in cand):
            continue
        prec = set(cand)
    return Ipomset(el, P.labels, prec, P.evord, P.sources, P.targets)


def random_renaming(rng: random.Random, P: Ipomset) -> Ipomset:
    names = [f"r{k}" for k in range(len(P))]
    rng.shuffle(names)
    return P.renamed(dict(zip(P.elements, names)))


# brute force oracles


def brute_interval(P: Ipomset) -> bool:
    """No four events forming two disjoint two-chains and nothing else."""
    for quad in permutations(P.elements, 4):
        a, b, c, d = quad
        if (a, b) in P.prec and (c, d) in P.prec:
            if not any(P.comparable(u, v) for u, v in ((a, c), (a, d), (b, c), (b, d))):
                return False
    return True


def brute_isomorphic(P: Ipomset, Q: Ipomset) -> bool:
    if len(P) != len(Q):
        return False
    for perm in permutations(Q.elements):
        f = dict(zip(P.elements, perm))
        if any(P.labels[x] != Q.labels[f[x]] for x in P.elements):
            continue
        if {f[x] for x in P.sources} != set(Q.sources):
            continue
        if {f[x] for x in P.targets} != set(Q.targets):
            continue
        if {(f[a], f[b]) for a, b in P.prec} != set(Q.prec):
            continue
        if {(f[a], f[b]) for a, b in P.essential_evord()} != set(Q.essential_evord()):
            continue
        return True
    return False


def brute_subsumes(P: Ipomset, Q: Ipomset) -> bool:
    from hdalang.ipomset import check_subsumption

    if len(P) != len(Q):
        return False
    return any(
        check_subsumption(P, Q, dict(zip(P.elements, perm))) for perm in permutations(Q.elements)
    )


def brute_weak_closure(P: Ipomset) -> set:
    """Canonical forms of interval orders over ``P``'s events containing ``<_P``."""
    from hdalang.ipomset import canonical_form, is_interval

    el = P.elements
    free = [(a, b) for a in el for b in el if a != b and (a, b) not in P.prec]
    out = set()
    for k in range(len(free) + 1):
        for extra in combinations(free, k):
            rel = set(P.prec) | set(extra)
            if transitive_closure(rel, el) != rel or any((x, x) in rel for x in el):
                continue
            if any(b in P.sources for _, b in rel) or any(a in P.targets for a, _ in rel):
                continue
            Q = Ipomset(el, P.labels, rel, P.evord, P.sources, P.targets)
            if is_interval(Q):
                out.add(canonical_form(Q))
    return out


def count_admissible_maps(P: Ipomset) -> tuple:
    """Cells of the track object by dimension, counted over all ``3^n`` maps."""
    from itertools import product

    from hdalang.precubical import ADMISSIBLE

    counts = {}
    for vals in product("0*1", repeat=len(P)):
        v = dict(zip(P.elements, vals))
        if all((v[a], v[b]) in ADMISSIBLE for a, b in P.prec):
            d = vals.count("*")
            counts[d] = counts.get(d, 0) + 1
    return tuple(counts.get(d, 0) for d in range(max(counts) + 1))


# HDAs


def random_grid(rng: random.Random, max_squares=3, labels="ab"):
    w, h = rng.randint(1, 3), rng.randint(1, 2)
    cells = [(i, j) for i in range(w) for j in range(h)]
    squares = rng.sample(cells, rng.randint(0, min(max_squares, len(cells))))
    cols = "".join(rng.choice(labels) for _ in range(w))
    rows = "".join(rng.choice(labels) for _ in range(h))
    verts = [f"{i}.{j}" for i in range(w + 1) for j in range(h + 1)]
    acc = [f"{w}.{h}"] + [v for v in verts if rng.random() < 0.15]
    init = ["0.0"] + [v for v in verts if rng.random() < 0.08 and v not in acc]
    return rectangle(w, h, squares, cols, rows, initial=init, accepting=acc)


def _reaching(X):
    """Cells from which an accept cell can be reached."""
    cof = lower_cofaces(X.complex)
    good = set(X.accepting)
    changed = True
    while changed:
        changed = False
        for x in X.cells():
            if x in good:
                continue
            nxt = [y for y, _ in cof[x]] + [
                X.delta(x, i, 1) for i in range(1, X.dim(x) + 1)
            ]
            if any(y in good for y in nxt):
                good.add(x)
                changed = True
    return good


def _rand_frac(rng, lo, hi):
    """Random rational strictly between ``lo`` and ``hi``."""
    k = rng.randint(1, 9)
    return lo + (hi - lo) * Fraction(k, 10)


def random_dpath(rng: random.Random, X, max_segments=10, max_tries=500):
    """A random piecewise linear d-path from a start to an accept cell.

    Each segment either continues in the current carrier or enters a cell
    having it as a lower face, then moves every coordinate up, some of them
    all the way to ``1``.  Segments have one to three waypoints.
    """
    cof = lower_cofaces(X.complex)
    good = _reaching(X)
    acc = set(X.accepting)
    for _ in range(max_tries):
        starts = [x for x in X.initial if x in good]
        if not starts:
            return None
        x = rng.choice(starts)
        pt = tuple(_rand_frac(rng, Fraction(0), Fraction(1)) for _ in range(X.dim(x)))
        segs = []
        ok = False
        for k in range(max_segments):
            if x in acc and segs and rng.random() < 0.4:
                ok = True
                break
            opts = [(x, frozenset())] + [(y, A) for y, A in cof[x] if y in good]
            y, A = rng.choice(opts)
            n = X.dim(y)
            it = iter(pt)
            start = tuple(Fraction(0) if i in A else next(it) for i in range(1, n + 1))
            for _ in range(20):
                end = []
                for c in start:
                    if rng.random() < 0.35:
                        end.append(Fraction(1))
                    else:
                        end.append(_rand_frac(rng, c, Fraction(1)) if c < 1 else c)
                end = tuple(end)
                if carrier(X, y, end).cell in good:
                    break
            else:
                break
            pts = [start]
            for _ in range(rng.randint(0, 2)):
                prev = pts[-1]
                pts.append(tuple(p + (e - p) * Fraction(rng.randint(0, 4), 4) for p, e in zip(prev, end)))
            pts.append(end)
            segs.append((y, pts))
            c = carrier(X, y, end)
            x, pt = c.cell, c.coords
        else:
            ok = x in acc
        if ok and segs:
            return make_dpath(X, segs)
    return None


def doubled(Y):
    """Two copies of ``Y`` sharing their start and accept vertices.

    Returns the glued HDA and the folding map onto ``Y``, which is open.
    """
    from hdalang.hda import make_hda
    from hdalang.precubical import validate_precubical

    shared = set(Y.initial) | set(Y.accepting)
    assert all(Y.dim(x) == 0 for x in shared)
    rn = lambda k, x: x if x in shared else f"{k}.{x}"
    dims, faces, labels, fold = {}, {}, {}, {}
    for k in (0, 1):
        for x in Y.cells():
            dims[rn(k, x)] = Y.dim(x)
            fold[rn(k, x)] = x
            for i in range(1, Y.dim(x) + 1):
                for nu in (0, 1):
                    faces[(rn(k, x), i, nu)] = rn(k, Y.delta(x, i, nu))
        for e, l in Y.edge_labels.items():
            labels[rn(k, e)] = l
    Z = make_hda(validate_precubical(dims, faces), labels, Y.initial, Y.accepting)
    return Z, fold


def renamed_hda(rng, Y):
    """A copy of ``Y`` with shuffled cell names."""
    from hdalang.hda import make_hda
    from hdalang.precubical import validate_precubical

    cells = list(Y.cells())
    names = [f"c{k}" for k in range(len(cells))]
    rng.shuffle(names)
    m = dict(zip(cells, names))
    dims = {m[x]: Y.dim(x) for x in cells}
    faces = {
        (m[x], i, nu): m[Y.delta(x, i, nu)]
        for x in cells
        for i in range(1, Y.dim(x) + 1)
        for nu in (0, 1)
    }
    labels = {m[e]: l for e, l in Y.edge_labels.items()}
    Z = make_hda(validate_precubical(dims, faces), labels,
                 [m[x] for x in Y.initial], [m[x] for x in Y.accepting])
    return Z, m


def loop_dpath():
    """The six-segment d-path through the loop HDA used for the arrangement picture."""
    X = loop(swap_vertical=True)
    segs = [
        ("0-1.0-1", [(Fraction(1, 5), Fraction(2, 5)), (Fraction(1), Fraction(3, 5))]),
        ("1-2.0-1", [(Fraction(0), Fraction(3, 5)), (Fraction(3, 5), Fraction(1))]),
        ("1-2.1-2", [(Fraction(3, 5), Fraction(0)), (Fraction(1), Fraction(3, 10))]),
        ("2-3.1-2", [(Fraction(0), Fraction(3, 10)), (Fraction(1, 2), Fraction(1))]),
        ("0-1.0-1", [(Fraction(1, 2), Fraction(0)), (Fraction(1), Fraction(3, 10))]),
        ("1-2.0-1", [(Fraction(0), Fraction(3, 10)), (Fraction(1), Fraction(3, 5))]),
    ]
    return X, make_dpath(X, segs)
