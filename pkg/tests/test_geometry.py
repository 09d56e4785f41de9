import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdalang import gallery
from hdalang.errors import Discontinuous, NotDirected
from hdalang.geometry import (
    Interval,
    carrier,
    dpath_label,
    dpath_to_track,
    format_arrangement,
    interval,
    interval_arrangement,
    make_dpath,
    parse_text,
    point_at,
    to_text,
    track_to_center_path,
)
from hdalang.ipomset import canonical_form, identity, isomorphic
from hdalang.track import enumerate_accepting_tracks, track_label, validate_track

from helpers import loop_dpath, random_dpath, random_grid

HALF = F(1, 2)


def test_interval_notation():
    I = interval("[0,1/6)")
    assert I == Interval(F(0), F(1, 6), True, False)
    assert str(I) == "[0,1/6)"
    assert 0 in I and F(1, 6) not in I
    assert I.before(interval("[1/6,1]"))
    assert not interval("[0,1/6]").before(interval("[1/6,1]"))


def test_carriers_in_square():
    X = gallery.concurrent_square()
    (x,) = X.cells(2)
    assert carrier(X, x, (HALF, HALF)).cell == x
    p = carrier(X, x, (0, HALF))
    assert p.cell == X.delta(x, 1, 0) and p.coords == (HALF,)
    assert carrier(X, x, (1, 1)).cell == "1.1"


def test_directedness_and_continuity_checked():
    X = gallery.concurrent_square()
    (x,) = X.cells(2)
    with pytest.raises(NotDirected):
        make_dpath(X, [(x, [(HALF, HALF), (F(1, 4), 1)])])
    with pytest.raises(Discontinuous):
        make_dpath(X, [(x, [(0, 0), (HALF, HALF)]), (x, [(F(3, 4), F(3, 4)), (1, 1)])])


def test_loop_arrangement():
    # a finishes at 5/6, where b restarts, so J_a is open at 5/6 like J_b.
    X, alpha = loop_dpath()
    arr = interval_arrangement(X, alpha)
    got = {X.event_label(e): [str(I) for I in Is] for e, Is in arr.items()}
    assert got == {
        "a": ["[0,1/6)", "(1/2,5/6)"],
        "b": ["(1/6,1/2)", "(5/6,1)"],
        "c": ["[0,1/3)", "(2/3,1]"],
        "d": ["(1/3,2/3)"],
    }


def test_loop_dpath_label():
    X, alpha = loop_dpath()
    P = dpath_label(X, alpha)
    assert len(P) == 7
    assert sorted(P.labels[x] for x in P.sources) == ["a", "c"]
    assert [P.labels[x] for x in P.targets] == ["c"]
    (t,) = P.targets
    assert t.endswith(".2")


def test_constant_paths():
    X = gallery.concurrent_square()
    v = X.initial[0]
    alpha = make_dpath(X, [(v, [()])])
    assert interval_arrangement(X, alpha) == {}
    (x,) = X.cells(2)
    beta = make_dpath(X, [(x, [(HALF, HALF)])])
    arr = interval_arrangement(X, beta)
    assert all(Is == [interval("[0,1]")] for Is in arr.values()) and len(arr) == 2
    assert isomorphic(dpath_label(X, beta), identity(X.cell_label(x)))


def test_center_path_of_unit_track():
    X = gallery.concurrent_square()
    (x,) = X.cells(2)
    alpha = track_to_center_path(X, validate_track(X, [x]))
    assert point_at(X, alpha, 0) == point_at(X, alpha, 1) == carrier(X, x, (HALF, HALF))


def test_center_path_of_three_squares():
    X = gallery.three_squares()
    t = next(iter(enumerate_accepting_tracks(X, 2)), None)
    assert t is None
    cells = ["0.0", "0-1.0-1", "1.0-1", "1-2.0-1", "2.0-1", "2-3.0-1", "3.1"]
    rho = validate_track(X, cells)
    alpha = track_to_center_path(X, rho)
    corners = []
    for seg in alpha.segments:
        for p in (seg.waypoints[0], seg.waypoints[-1]):
            q = X.realize(seg.cell, p)
            if not corners or corners[-1] != q:
                corners.append(q)
    assert corners[0] == (0, 0) and corners[1] == (HALF, HALF)
    assert corners[-2] == (F(5, 2), HALF) and corners[-1] == (3, 1)
    assert all(q[1] == HALF for q in corners[1:-1])


def test_a_par_cd_paths():
    X = gallery.a_par_cd()
    labels = set()
    for rho in enumerate_accepting_tracks(X, 12):
        labels.add(canonical_form(dpath_label(X, track_to_center_path(X, rho))))
    assert labels == {canonical_form(P) for P in gallery.a_par_cd_pomsets()}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_path_and_its_track_agree(seed):
    rng = random.Random(seed)
    X = random_grid(rng)
    alpha = random_dpath(rng, X)
    if alpha is None:
        return
    rho = dpath_to_track(X, alpha)
    assert isomorphic(dpath_label(X, alpha), track_label(X, rho))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_arrangement_within_unit_interval(seed):
    rng = random.Random(seed)
    X = random_grid(rng)
    alpha = random_dpath(rng, X)
    if alpha is None:
        return
    for Is in interval_arrangement(X, alpha).values():
        for I, J in zip(Is, Is[1:]):
            assert I.before(J)
        for I in Is:
            assert 0 <= I.lo < I.hi <= 1


def test_text_round_trip():
    X, alpha = loop_dpath()
    text = to_text(alpha)
    assert parse_text(X, text) == alpha
    v = gallery.concurrent_square()
    beta = make_dpath(v, [(v.initial[0], [()])])
    assert parse_text(v, to_text(beta)) == beta


def test_format_arrangement():
    X, alpha = loop_dpath()
    out = format_arrangement(interval_arrangement(X, alpha))
    assert "∪" in out and out.count("\n") == 4
