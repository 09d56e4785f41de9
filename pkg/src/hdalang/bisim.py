"""History-dependent bisimulations between HDAs and open maps."""

from __future__ import annotations

from itertools import permutations
from typing import Mapping

from .errors import BudgetExceeded
from .hda import DEFAULT_BUDGET, HDA
from .precubical import lower_cofaces


def _elementary_cofaces(X: HDA) -> dict:
    """``x -> [(k, x')]`` with ``x = δ_k^0 x'``."""
    out = {x: [] for x in X.cells()}
    for x, ys in lower_cofaces(X.complex).items():
        for y, A in ys:
            if len(A) == 1:
                out[x].append((next(iter(A)), y))
    return out


def _refine(X: HDA, Y: HDA, R: set, cx: dict, cy: dict, budget_box) -> set:
    """Largest subset of ``R`` closed under faces with both extension properties."""
    R = set(R)
    changed = True
    while changed:
        changed = False
        for x, y in list(R):
            budget_box[0] -= 1
            if budget_box[0] < 0:
                raise BudgetExceeded("bisimulation search exceeded its budget")
            bad = False
            for i in range(1, X.dim(x) + 1):
                for nu in (0, 1):
                    if (X.delta(x, i, nu), Y.delta(y, i, nu)) not in R:
                        bad = True
            if not bad:
                for k, x2 in cx[x]:
                    if not any(k2 == k and (x2, y2) in R for k2, y2 in cy[y]):
                        bad = True
                        break
            if not bad:
                for k, y2 in cy[y]:
                    if not any(k2 == k and (x2, y2) in R for k2, x2 in cx[x]):
                        bad = True
                        break
            if bad:
                R.discard((x, y))
                changed = True
    return R


def _bijections(A, B, allowed):
    A, B = list(A), list(B)
    if len(A) != len(B):
        return
    for perm in permutations(B):
        pairs = set(zip(A, perm))
        if pairs <= allowed:
            yield pairs


def find_hd_bisimulation(X: HDA, Y: HDA, budget: int = DEFAULT_BUDGET):
    """An hd-bisimulation between ``X`` and ``Y`` as a set of pairs, or ``None``.

    The largest relation satisfying every condition except the interface
    one is computed first.  Then each pair of start and accept bijections
    inside it is tried: pairs of interface cells outside the chosen
    bijections are dropped and the relation is refined again.  Any
    bisimulation realizing those bijections lies inside the result, so the
    search is exact.
    """
    box = [budget]
    cx, cy = _elementary_cofaces(X), _elementary_cofaces(Y)
    R0 = {
        (x, y)
        for x in X.cells()
        for y in Y.cells()
        if X.dim(x) == Y.dim(y) and X.label(x) == Y.label(y)
    }
    Rmax = _refine(X, Y, R0, cx, cy, box)
    IX, IY, FX, FY = set(X.initial), set(Y.initial), set(X.accepting), set(Y.accepting)
    for bi in _bijections(IX, IY, Rmax):
        for bf in _bijections(FX, FY, Rmax):
            box[0] -= 1
            if box[0] < 0:
                raise BudgetExceeded("bisimulation search exceeded its budget")
            R = {
                (x, y)
                for x, y in Rmax
                if not ((x in IX and y in IY and (x, y) not in bi)
                        or (x in FX and y in FY and (x, y) not in bf))
            }
            R = _refine(X, Y, R, cx, cy, box)
            if bi <= R and bf <= R:
                return R
    return None


def is_hd_bisimulation(X: HDA, Y: HDA, R) -> bool:
    """Check the five conditions directly."""
    R = set(R)
    for x, y in R:
        if X.dim(x) != Y.dim(y) or X.label(x) != Y.label(y):
            return False
        for i in range(1, X.dim(x) + 1):
            for nu in (0, 1):
                if (X.delta(x, i, nu), Y.delta(y, i, nu)) not in R:
                    return False
    for A, B, name in ((X.initial, Y.initial, "I"), (X.accepting, Y.accepting, "F")):
        sub = {(x, y) for x, y in R if x in A and y in B}
        if len(sub) != len(A) or len(sub) != len(B):
            return False
        if {x for x, _ in sub} != set(A) or {y for _, y in sub} != set(B):
            return False
    cx, cy = _elementary_cofaces(X), _elementary_cofaces(Y)
    for x, y in R:
        for k, x2 in cx[x]:
            if not any(k2 == k and (x2, y2) in R for k2, y2 in cy[y]):
                return False
        for k, y2 in cy[y]:
            if not any(k2 == k and (x2, y2) in R for k2, x2 in cx[x]):
                return False
    return True


def is_open_map(f: Mapping, X: HDA, Y: HDA) -> bool:
    """Bijective on start and accept cells, and lower faces lift."""
    for A, B in ((X.initial, Y.initial), (X.accepting, Y.accepting)):
        img = [f[x] for x in A]
        if len(set(img)) != len(img) or set(img) != set(B):
            return False
    cx, cy = _elementary_cofaces(X), _elementary_cofaces(Y)
    for x in X.cells():
        for k, y2 in cy[f[x]]:
            if not any(k2 == k and f[x2] == y2 for k2, x2 in cx[x]):
                return False
    return True


def span_relation(g: Mapping, h: Mapping) -> set:
    """The relation ``{(g(z), h(z))}`` of a span ``X <- Z -> Y``."""
    return {(g[z], h[z]) for z in g}


def dump_pairs(X: HDA, R) -> str:
    lines = []
    by_dim = {}
    for x, y in R:
        by_dim.setdefault(X.dim(x), []).append((x, y))
    for d in sorted(by_dim):
        lines.append(f"# dimension {d}")
        lines += [f"{x} {y}" for x, y in sorted(by_dim[d])]
    return "\n".join(lines) + "\n"
