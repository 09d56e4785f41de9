"""Interval pomsets with interfaces.

An ipomset is a finite set of events carrying two strict orders: the
precedence order ``<`` and the event order ``⋖``.  Every pair of distinct
events is related by at least one of them.  Source events are minimal for
precedence, target events are maximal.  Isomorphisms only have to respect
the event order on precedence-incomparable pairs (the *essential* part), so
equality up to isomorphism is decided through :func:`canonical_form`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Mapping

import networkx as nx

from .errors import (
    BadInterface,
    DuplicateId,
    InterfaceMismatch,
    NotInterval,
    NotIrreflexive,
    NotTotal,
    UnknownElement,
)


@dataclass(frozen=True)
class LinearPomset:
    """A totally ordered labelled set, listed in its order."""

    elements: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.elements) != len(self.labels):
            raise ValueError("elements and labels differ in length")
        if len(set(self.elements)) != len(self.elements):
            raise DuplicateId("repeated element in linear pomset")

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "LinearPomset":
        labels = tuple(labels)
        return cls(tuple(f"e{k}" for k in range(len(labels))), labels)

    def __len__(self):
        return len(self.elements)

    def label_of(self, e):
        return self.labels[self.elements.index(e)]

    def word(self) -> str:
        return "".join(self.labels) if all(len(l) == 1 for l in self.labels) else " ".join(self.labels)


def transitive_closure(pairs: Iterable[tuple], elements: Iterable) -> frozenset:
    succ = {x: set() for x in elements}
    for a, b in pairs:
        succ[a].add(b)
    closed = set()
    for x in succ:
        seen = set()
        stack = list(succ[x])
        while stack:
            y = stack.pop()
            if y in seen:
                continue
            seen.add(y)
            stack.extend(succ[y])
        closed.update((x, y) for y in seen)
    return frozenset(closed)


def _linear_rank(elements, order) -> dict:
    """Positions in some linear extension of the strict order ``order``."""
    g = nx.DiGraph()
    g.add_nodes_from(elements)
    g.add_edges_from(order)
    index = {x: k for k, x in enumerate(elements)}
    topo = nx.lexicographical_topological_sort(g, key=index.__getitem__)
    return {x: k for k, x in enumerate(topo)}


class Ipomset:
    """A validated ipomset.  Build instances through :func:`validate_ipomset`.

    ``prec`` and ``evord`` are stored transitively closed as sets of pairs.
    """

    __slots__ = ("elements", "labels", "prec", "evord", "sources", "targets", "_cache")

    def __init__(self, elements, labels, prec, evord, sources, targets):
        self.elements = tuple(elements)
        self.labels = dict(labels)
        self.prec = frozenset(prec)
        self.evord = frozenset(evord)
        self.sources = frozenset(sources)
        self.targets = frozenset(targets)
        self._cache = {}

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Ipomset):
            return NotImplemented
        return (
            set(self.elements) == set(other.elements)
            and self.labels == other.labels
            and self.prec == other.prec
            and self.evord == other.evord
            and self.sources == other.sources
            and self.targets == other.targets
        )

    def __hash__(self):
        return hash((frozenset(self.elements), self.prec, self.evord, self.sources, self.targets))

    def __repr__(self):
        return f"Ipomset({to_text(self)!r})"

    def comparable(self, x, y) -> bool:
        return (x, y) in self.prec or (y, x) in self.prec

    def essential_evord(self) -> frozenset:
        return frozenset(p for p in self.evord if not self.comparable(*p))

    def minimal(self) -> frozenset:
        below = {b for _, b in self.prec}
        return frozenset(x for x in self.elements if x not in below)

    def maximal(self) -> frozenset:
        above = {a for a, _ in self.prec}
        return frozenset(x for x in self.elements if x not in above)

    def is_discrete(self) -> bool:
        return not self.prec

    def evord_rank(self) -> dict:
        if "rank" not in self._cache:
            self._cache["rank"] = _linear_rank(self.elements, self.evord)
        return self._cache["rank"]

    def sort_by_evord(self, subset) -> list:
        """Sort a set of pairwise precedence-incomparable events by ``⋖``."""
        rank = self.evord_rank()
        return sorted(subset, key=rank.__getitem__)

    def source_interface(self) -> LinearPomset:
        s = self.sort_by_evord(self.sources)
        return LinearPomset(tuple(s), tuple(self.labels[x] for x in s))

    def target_interface(self) -> LinearPomset:
        t = self.sort_by_evord(self.targets)
        return LinearPomset(tuple(t), tuple(self.labels[x] for x in t))

    def renamed(self, mapping: Mapping) -> "Ipomset":
        m = lambda x: mapping.get(x, x)
        return Ipomset(
            [m(x) for x in self.elements],
            {m(x): l for x, l in self.labels.items()},
            {(m(a), m(b)) for a, b in self.prec},
            {(m(a), m(b)) for a, b in self.evord},
            {m(x) for x in self.sources},
            {m(x) for x in self.targets},
        )


def validate_ipomset(
    elements: Iterable,
    labels: Mapping,
    prec: Iterable = (),
    evord: Iterable = (),
    sources: Iterable = (),
    targets: Iterable = (),
) -> Ipomset:
    """Check raw ipomset data and return the closed, validated ipomset."""
    elements = list(elements)
    seen = set()
    for x in elements:
        if x in seen:
            raise DuplicateId(f"element {x!r} listed twice")
        seen.add(x)
    for x in elements:
        if x not in labels:
            raise UnknownElement(f"element {x!r} has no label")
    for x in labels:
        if x not in seen:
            raise UnknownElement(f"label given for unknown element {x!r}")
    prec, evord = list(prec), list(evord)
    sources, targets = set(sources), set(targets)
    for rel, name in ((prec, "precedence"), (evord, "event order")):
        for a, b in rel:
            for x in (a, b):
                if x not in seen:
                    raise UnknownElement(f"{name} mentions unknown element {x!r}")
    for x in sources | targets:
        if x not in seen:
            raise UnknownElement(f"interface mentions unknown element {x!r}")
    pc = transitive_closure(prec, elements)
    ec = transitive_closure(evord, elements)
    for x in elements:
        if (x, x) in pc:
            raise NotIrreflexive(f"precedence has a cycle through {x!r}")
        if (x, x) in ec:
            raise NotIrreflexive(f"event order has a cycle through {x!r}")
    for i, x in enumerate(elements):
        for y in elements[i + 1:]:
            if not ((x, y) in pc or (y, x) in pc or (x, y) in ec or (y, x) in ec):
                raise NotTotal(f"{x!r} and {y!r} are unrelated")
    below = {b for _, b in pc}
    above = {a for a, _ in pc}
    for x in sources:
        if x in below:
            raise BadInterface(f"source {x!r} is not minimal")
    for x in targets:
        if x in above:
            raise BadInterface(f"target {x!r} is not maximal")
    return Ipomset(elements, {x: labels[x] for x in elements}, pc, ec, sources, targets)


def discrete(lp: LinearPomset, sources=None, targets=None) -> Ipomset:
    """The discrete ipomset on ``lp``; interfaces default to everything."""
    el = lp.elements
    order = {(el[i], el[j]) for i in range(len(el)) for j in range(i + 1, len(el))}
    return Ipomset(
        el,
        dict(zip(el, lp.labels)),
        (),
        order,
        el if sources is None else sources,
        el if targets is None else targets,
    )


def identity(lp: LinearPomset) -> Ipomset:
    return discrete(lp)


def from_word(word: str, sep: str = "<") -> Ipomset:
    """A chain such as ``a<b<a``; elements are named by position."""
    labs = [w for w in word.split(sep)] if sep in word else list(word)
    el = [f"p{k}" for k in range(len(labs))]
    prec = {(el[i], el[j]) for i in range(len(el)) for j in range(i + 1, len(el))}
    return Ipomset(el, dict(zip(el, labs)), prec, (), (), ())


# canonical forms


@dataclass(frozen=True, order=True)
class CanonicalIpomset:
    """Isomorphism-invariant normal form.

    Position ``k`` is the ``k``-th event in the total order that walks the
    levels of the precedence filtration and orders each level by ``⋖``.
    ``rank`` holds ``(label, is_source, is_target)`` per position.
    """

    size: int
    rank: tuple
    precedence: tuple
    essential: tuple

    def encode(self) -> str:
        labs = " ".join(
            l + ("<" if s else "") + (">" if t else "") for l, s, t in self.rank
        )
        prec = " ".join(f"{a}<{b}" for a, b in self.precedence)
        ess = " ".join(f"{a}:{b}" for a, b in self.essential)
        return f"n={self.size} | {labs} | {prec} | {ess}"

    def to_ipomset(self) -> Ipomset:
        """A representative whose elements are ``p0 .. p(n-1)``.

        Only the essential event order is stored; its closure is a valid
        event order because precedence covers every other pair.
        """
        el = [f"p{k}" for k in range(self.size)]
        prec = {(el[a], el[b]) for a, b in self.precedence}
        evord = {(el[a], el[b]) for a, b in self.essential}
        return validate_ipomset(
            el,
            {el[k]: r[0] for k, r in enumerate(self.rank)},
            prec,
            evord,
            [el[k] for k, r in enumerate(self.rank) if r[1]],
            [el[k] for k, r in enumerate(self.rank) if r[2]],
        )


def filtration_levels(P: Ipomset) -> dict:
    """Level of each event: length of the longest precedence chain below it."""
    preds = {x: [] for x in P.elements}
    for a, b in P.prec:
        preds[b].append(a)
    level = {}

    def lvl(x):
        if x not in level:
            level[x] = 1 + max((lvl(p) for p in preds[x]), default=-1)
        return level[x]

    for x in P.elements:
        lvl(x)
    return level


def canonical_order(P: Ipomset) -> list:
    """Events listed level by level, each level ordered by ``⋖``."""
    if "order" not in P._cache:
        level = filtration_levels(P)
        rank = P.evord_rank()
        P._cache["order"] = sorted(P.elements, key=lambda x: (level[x], rank[x]))
    return P._cache["order"]


def canonical_form(P: Ipomset) -> CanonicalIpomset:
    if "canon" not in P._cache:
        order = canonical_order(P)
        pos = {x: k for k, x in enumerate(order)}
        rank = tuple((P.labels[x], x in P.sources, x in P.targets) for x in order)
        prec = tuple(sorted((pos[a], pos[b]) for a, b in P.prec))
        ess = tuple(
            sorted((pos[a], pos[b]) for a, b in P.evord if not P.comparable(a, b))
        )
        P._cache["canon"] = CanonicalIpomset(len(order), rank, prec, ess)
    return P._cache["canon"]


def isomorphic(P: Ipomset, Q: Ipomset) -> bool:
    return canonical_form(P) == canonical_form(Q)


def canonical_renaming(P: Ipomset) -> Ipomset:
    """``P`` with events renamed ``p0 ..`` in canonical order."""
    return P.renamed({x: f"p{k}" for k, x in enumerate(canonical_order(P))})


# gluing and parallel composition


def _fresh_names(names, used) -> dict:
    used = set(used)
    out = {}
    for x in names:
        y = x
        while y in used:
            y = f"{y}'"
        used.add(y)
        out[x] = y
    return out


def interfaces_match(T: LinearPomset, S: LinearPomset) -> bool:
    return T.labels == S.labels


def glue_with_maps(P: Ipomset, Q: Ipomset):
    """Gluing composition ``P * Q`` with the embeddings of ``P`` and ``Q``.

    ``P``'s events keep their names.  The sources of ``Q`` are identified
    with the targets of ``P``; the other events of ``Q`` are renamed only
    when their names clash.
    """
    T, S = P.target_interface(), Q.source_interface()
    if not interfaces_match(T, S):
        raise InterfaceMismatch(
            f"target interface {T.labels} does not match source interface {S.labels}"
        )
    rest = [q for q in Q.elements if q not in Q.sources]
    mq = dict(zip(S.elements, T.elements))
    mq.update(_fresh_names(rest, P.elements))
    Qr = Q.renamed(mq)
    rest_r = [mq[q] for q in rest]
    p_done = [p for p in P.elements if p not in P.targets]
    elements = list(P.elements) + rest_r
    prec = set(P.prec) | set(Qr.prec) | {(p, q) for p in p_done for q in rest_r}
    evord = set(P.evord) | set(Qr.evord)
    R = Ipomset(
        elements,
        {**P.labels, **Qr.labels},
        transitive_closure(prec, elements),
        transitive_closure(evord, elements),
        P.sources,
        Qr.targets,
    )
    return R, {p: p for p in P.elements}, mq


def glue(P: Ipomset, Q: Ipomset) -> Ipomset:
    return glue_with_maps(P, Q)[0]


def glue_all(pieces: Iterable[Ipomset]) -> Ipomset:
    pieces = list(pieces)
    if not pieces:
        raise ValueError("nothing to glue")
    out = pieces[0]
    for p in pieces[1:]:
        out = glue(out, p)
    return out


def parallel_with_maps(P: Ipomset, Q: Ipomset):
    mq = _fresh_names(Q.elements, P.elements)
    Qr = Q.renamed(mq)
    elements = list(P.elements) + list(Qr.elements)
    evord = set(P.evord) | set(Qr.evord) | {(p, q) for p in P.elements for q in Qr.elements}
    R = Ipomset(
        elements,
        {**P.labels, **Qr.labels},
        set(P.prec) | set(Qr.prec),
        evord,
        P.sources | Qr.sources,
        P.targets | Qr.targets,
    )
    return R, {p: p for p in P.elements}, mq


def parallel(P: Ipomset, Q: Ipomset) -> Ipomset:
    """Parallel composition; every event of ``P`` comes first in ``⋖``."""
    return parallel_with_maps(P, Q)[0]


# interval orders


def is_interval(P: Ipomset) -> bool:
    """True when the precedence order has no induced 2+2."""
    prec = P.prec
    for x, z in prec:
        for y, w in prec:
            if (x, w) not in prec and (y, z) not in prec:
                return False
    return True


def _precedes_antichain(P, X, Y) -> bool:
    return not any((y, x) in P.prec for x in X for y in Y)


def maximal_antichains(P: Ipomset) -> list:
    """Maximal antichains of an interval order, in their linear order."""
    if not P.elements:
        return [frozenset()]
    g = nx.Graph()
    g.add_nodes_from(P.elements)
    el = P.elements
    for i, x in enumerate(el):
        for y in el[i + 1:]:
            if not P.comparable(x, y):
                g.add_edge(x, y)
    cliques = [frozenset(c) for c in nx.find_cliques(g)]

    def cmp(X, Y):
        if X == Y:
            return 0
        return -1 if _precedes_antichain(P, X, Y) else 1

    return sorted(cliques, key=cmp_to_key(cmp))


def _sub_discrete(P: Ipomset, U, S, T) -> Ipomset:
    U = P.sort_by_evord(U)
    order = {(U[i], U[j]) for i in range(len(U)) for j in range(i + 1, len(U))}
    return Ipomset(U, {x: P.labels[x] for x in U}, (), order, S, T)


def decompose_interval(P: Ipomset) -> list:
    """Split an interval ipomset into discrete pieces along its maximal antichains.

    Gluing the pieces back together returns ``P`` on the nose, except
    that event order between comparable events is forgotten.
    """
    if not is_interval(P):
        raise NotInterval("precedence order contains 2+2")
    chains = maximal_antichains(P)
    m = len(chains)
    pieces = []
    for k, U in enumerate(chains):
        S = P.sources if k == 0 else U & chains[k - 1]
        T = P.targets if k == m - 1 else U & chains[k + 1]
        pieces.append(_sub_discrete(P, U, S, T))
    return pieces


def starter(P: Ipomset, U, A) -> Ipomset:
    """The starter ``(U-A) ↑ U ↑ U`` with events taken from ``P``."""
    U = frozenset(U)
    return _sub_discrete(P, U, U - frozenset(A), U)


def terminator(P: Ipomset, U, A) -> Ipomset:
    U = frozenset(U)
    return _sub_discrete(P, U, U, U - frozenset(A))


def elementary_decomposition(P: Ipomset) -> list:
    """Elementary starters and terminators whose gluing is ``P``.

    Each discrete piece starts its new events one at a time (in ``⋖``
    order) and then terminates its finished events one at a time.
    """
    out = []
    whole = decompose_interval(P)
    for D in whole:
        U = frozenset(D.elements)
        cur = set(D.sources)
        for x in D.sort_by_evord(U - D.sources):
            cur.add(x)
            out.append(_sub_discrete(D, cur, cur - {x}, cur))
        for x in D.sort_by_evord(U - D.targets):
            out.append(_sub_discrete(D, cur, cur, cur - {x}))
            cur.discard(x)
    # an identity has no elementary steps; keep it so that gluing works
    return out or whole


# subsumption


def subsumes(P: Ipomset, Q: Ipomset):
    """Witness ``f: P -> Q`` for ``P ⊑ Q``, or ``None``.

    ``f`` is a label and interface preserving bijection that reflects
    precedence and maps the essential event order of ``P`` into ``⋖_Q``.
    """
    if len(P) != len(Q):
        return None
    key = lambda R, x: (R.labels[x], x in R.sources, x in R.targets)
    from collections import Counter

    if Counter(key(P, x) for x in P.elements) != Counter(key(Q, y) for y in Q.elements):
        return None
    order = canonical_order(P)
    cands = {x: [y for y in Q.elements if key(Q, y) == key(P, x)] for x in order}
    f, used = {}, set()

    def ok(x, y):
        for x2, y2 in f.items():
            if (y, y2) in Q.prec and (x, x2) not in P.prec:
                return False
            if (y2, y) in Q.prec and (x2, x) not in P.prec:
                return False
            if not P.comparable(x, x2):
                if (x, x2) in P.evord and (y, y2) not in Q.evord:
                    return False
                if (x2, x) in P.evord and (y2, y) not in Q.evord:
                    return False
        return True

    def go(k):
        if k == len(order):
            return True
        x = order[k]
        for y in cands[x]:
            if y not in used and ok(x, y):
                f[x] = y
                used.add(y)
                if go(k + 1):
                    return True
                del f[x]
                used.discard(y)
        return False

    return dict(f) if go(0) else None


def check_subsumption(P: Ipomset, Q: Ipomset, f: Mapping) -> bool:
    """Verify a proposed subsumption witness."""
    if sorted(f) != sorted(P.elements) or sorted(f.values()) != sorted(Q.elements):
        return False
    for x in P.elements:
        if P.labels[x] != Q.labels[f[x]]:
            return False
    if {f[x] for x in P.sources} != set(Q.sources):
        return False
    if {f[x] for x in P.targets} != set(Q.targets):
        return False
    for x in P.elements:
        for y in P.elements:
            if (f[x], f[y]) in Q.prec and (x, y) not in P.prec:
                return False
            if (x, y) in P.evord and not P.comparable(x, y) and (f[x], f[y]) not in Q.evord:
                return False
    return True


# text format


def parse_text(text: str) -> Ipomset:
    """Parse ``elem``/``prec``/``evord`` lines; ``#`` starts a comment."""
    from .errors import FormatError

    elements, labels, prec, evord, src, tgt = [], {}, [], [], [], []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        kw, args = line[0], line[1:]
        if kw == "elem":
            if len(args) < 2:
                raise FormatError("elem needs an id and a label", n)
            x, lab, flags = args[0], args[1], args[2:]
            bad = set(flags) - {"src", "tgt"}
            if bad:
                raise FormatError(f"unknown flag {sorted(bad)[0]!r}", n)
            elements.append(x)
            if x in labels:
                raise DuplicateId(f"line {n}: element {x!r} listed twice")
            labels[x] = lab
            if "src" in flags:
                src.append(x)
            if "tgt" in flags:
                tgt.append(x)
        elif kw in ("prec", "evord"):
            if len(args) != 2:
                raise FormatError(f"{kw} needs two ids", n)
            (prec if kw == "prec" else evord).append(tuple(args))
        else:
            raise FormatError(f"unknown keyword {kw!r}", n)
    return validate_ipomset(elements, labels, prec, evord, src, tgt)


def to_text(P: Ipomset, order=None) -> str:
    """Serialize; events are listed in canonical order unless given."""
    order = list(order) if order is not None else canonical_order(P)
    pos = {x: k for k, x in enumerate(order)}
    lines = []
    for x in order:
        flags = (" src" if x in P.sources else "") + (" tgt" if x in P.targets else "")
        lines.append(f"elem {x} {P.labels[x]}{flags}")
    key = lambda p: (pos[p[0]], pos[p[1]])
    lines += [f"prec {a} {b}" for a, b in sorted(P.prec, key=key)]
    lines += [f"evord {a} {b}" for a, b in sorted(P.evord, key=key)]
    return "\n".join(lines) + "\n"
