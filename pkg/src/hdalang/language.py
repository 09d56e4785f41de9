"""Languages of HDAs: enumeration, weak closure and membership."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import BudgetExceeded
from .hda import DEFAULT_BUDGET, HDA, coproduct, find_hda_map, track_object
from .ipomset import (
    CanonicalIpomset,
    Ipomset,
    canonical_form,
    decompose_interval,
    is_interval,
    parallel,
    transitive_closure,
)
from .precubical import face, lower_cofaces
from .track import Step, _advance, _begin, enumerate_accepting_tracks, track_label


@dataclass
class LanguageSet:
    """A finite set of canonical ipomsets.

    ``truncated`` is set when a bound cut the search short, so the set may
    miss members of the full language.
    """

    members: frozenset = field(default_factory=frozenset)
    truncated: bool = False

    def __contains__(self, P) -> bool:
        if isinstance(P, Ipomset):
            P = canonical_form(P)
        return P in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list:
        return sorted(self.members, key=lambda c: (c.size, c.encode()))

    def dump(self) -> str:
        return "".join(c.encode() + "\n" for c in self.sorted())


def language_of(items: Iterable) -> LanguageSet:
    out = set()
    for P in items:
        out.add(P if isinstance(P, CanonicalIpomset) else canonical_form(P))
    return LanguageSet(frozenset(out))


def enumerate_language(X: HDA, max_size: int = 8, max_steps: int = 16) -> LanguageSet:
    """Labels of accepting tracks with at most ``max_steps`` elementary steps
    and at most ``max_size`` events.

    The search runs breadth first over pairs (current cell, label so far up
    to isomorphism).  Two runs that agree on this pair have the same
    continuations, so only the first, shortest one is expanded.
    """
    C = X.complex
    cof = lower_cofaces(C)
    acc = set(X.accepting)
    found = set()
    truncated = False
    seen = set()
    queue = deque()
    for x in X.initial:
        run = _begin(X, x)
        if len(run.labels) > max_size:
            truncated = True
            continue
        key = (x, canonical_form(run.ipomset()))
        if key not in seen:
            seen.add(key)
            queue.append((x, run, 0, key[1]))
    while queue:
        x, run, depth, canon = queue.popleft()
        if x in acc:
            found.add(canon)
        moves = [(y, Step("lower", A)) for y, A in cof[x] if len(A) == 1]
        moves += [(C.delta(x, i, 1), Step("upper", frozenset([i]))) for i in range(1, C.dim(x) + 1)]
        if not moves:
            continue
        if depth == max_steps:
            truncated = True
            continue
        for y, s in moves:
            if s.kind == "lower" and len(run.labels) + 1 > max_size:
                truncated = True
                continue
            r2 = run.copy()
            _advance(X, r2, x, y, s)
            c2 = canonical_form(r2.ipomset())
            key = (y, c2)
            if key in seen:
                continue
            seen.add(key)
            queue.append((y, r2, depth + 1, c2))
    return LanguageSet(frozenset(found), truncated)


def language_from_tracks(X: HDA, max_size: int, max_steps: int) -> LanguageSet:
    """Plain enumeration of every accepting track; slow but simple."""
    out = set()
    for t in enumerate_accepting_tracks(X, max_steps):
        P = track_label(X, t)
        if len(P) <= max_size:
            out.add(canonical_form(P))
    return LanguageSet(frozenset(out))


# weak closure


def _extensions(P: Ipomset):
    """Every strict order containing ``<_P`` that keeps sources minimal and
    targets maximal, each produced once."""
    el = list(P.elements)
    pairs = [(el[i], el[j]) for i in range(len(el)) for j in range(i + 1, len(el))]
    src, tgt = P.sources, P.targets

    def can_add(rel, a, b):
        return (b, a) not in rel and b not in src and a not in tgt

    def close_with(rel, a, b):
        below_a = {x for x, y in rel if y == a} | {a}
        above_b = {y for x, y in rel if x == b} | {b}
        new = {(x, y) for x in below_a for y in above_b}
        return rel | new, new

    def go(k, rel, forbidden):
        while k < len(pairs) and (pairs[k] in rel or pairs[k][::-1] in rel):
            k += 1
        if k == len(pairs):
            yield rel
            return
        a, b = pairs[k]
        yield from go(k + 1, rel, forbidden | {(a, b)})
        for x, y in ((a, b), (b, a)):
            if not can_add(rel, x, y):
                continue
            rel2, new = close_with(rel, x, y)
            if any(p in forbidden or p[::-1] in forbidden for p in new):
                continue
            if any(q in src for _, q in new) or any(p in tgt for p, _ in new):
                continue
            yield from go(k + 1, rel2, forbidden)

    yield from go(0, frozenset(P.prec), frozenset())


def weak_closure(generators: Iterable[Ipomset], require_interval: bool = True) -> LanguageSet:
    """All interval ipomsets subsumed by some generator, up to isomorphism.

    A subsumed ipomset has the same events with more precedence; its event
    order on concurrent pairs is inherited, so keeping ``⋖`` is enough.
    Generators need not be interval when ``require_interval`` is false.
    """
    out = set()
    for P in generators:
        if require_interval and not is_interval(P):
            from .errors import NotInterval

            raise NotInterval("weak closure generators must be interval")
        for rel in _extensions(P):
            Q = Ipomset(P.elements, P.labels, rel, P.evord, P.sources, P.targets)
            if is_interval(Q):
                out.add(canonical_form(Q))
    return LanguageSet(frozenset(out))


def parallel_closure(L1: Iterable, L2: Iterable) -> LanguageSet:
    """``{P ∥ Q}↓`` restricted to interval ipomsets."""
    gens = []
    for a in L1:
        for b in L2:
            A = a.to_ipomset() if isinstance(a, CanonicalIpomset) else a
            B = b.to_ipomset() if isinstance(b, CanonicalIpomset) else b
            gens.append(parallel(A, B))
    return weak_closure(gens, require_interval=False)


# membership


def member_by_tracks(P: Ipomset, X: HDA, budget: int = DEFAULT_BUDGET) -> bool:
    """Search for an accepting track in ``X`` labelled by ``P``.

    The track follows the maximal antichains of ``P``: start the new events
    of an antichain in one lower step, then end the finished ones in one
    upper step.
    """
    if not is_interval(P):
        return False
    C = X.complex
    cof = lower_cofaces(C)
    pieces = decompose_interval(P)
    rank = P.evord_rank()
    srt = lambda s: sorted(s, key=rank.__getitem__)
    labels = lambda s: tuple(P.labels[p] for p in srt(s))
    acc = set(X.accepting)
    steps = [0]

    def go(k, x):
        steps[0] += 1
        if steps[0] > budget:
            raise BudgetExceeded(f"track search exceeded {budget} steps")
        if k == len(pieces):
            return x in acc
        D = pieces[k]
        U = srt(D.elements)
        new = {i + 1 for i, p in enumerate(U) if p not in D.sources}
        gone = frozenset(i + 1 for i, p in enumerate(U) if p not in D.targets)
        want = labels(U)
        if new:
            ys = [y for y, A in cof[x] if A == new and X.label(y) == want]
        else:
            ys = [x]
        for y in ys:
            z = face(C, y, gone, 1) if gone else y
            if go(k + 1, z):
                return True
        return False

    S = srt(P.sources)
    for x in X.initial:
        if X.label(x) == labels(S) and go(0, x):
            return True
    return False


def member(P: Ipomset, X: HDA, budget: int = DEFAULT_BUDGET, cross_check: bool = False) -> bool:
    """Decide ``P ∈ L(X)`` by searching for an HDA map ``□P -> X``.

    With ``cross_check`` the track search of :func:`member_by_tracks` runs
    as well and both answers must agree.
    """
    if not is_interval(P):
        return False
    ans = find_hda_map(track_object(P), X, budget) is not None
    if cross_check:
        other = member_by_tracks(P, X, budget)
        if other != ans:
            raise AssertionError("map search and track search disagree")
    return ans


def hda_from_language(generators: Iterable[Ipomset]) -> HDA:
    """Coproduct of the track objects of the generators."""
    gens = list(generators)
    return coproduct(*[track_object(P) for P in gens])
