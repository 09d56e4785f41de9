import random

from hypothesis import given, settings
from hypothesis import strategies as st

from hdalang import gallery
from hdalang.bisim import (
    dump_pairs,
    find_hd_bisimulation,
    is_hd_bisimulation,
    is_open_map,
    span_relation,
)
from hdalang.hda import coproduct
from hdalang.language import enumerate_language

from helpers import doubled, random_grid, renamed_hda


def test_identity_bisimulation():
    X = gallery.a_par_cd()
    R = find_hd_bisimulation(X, X)
    assert {(x, x) for x in X.cells()} <= R
    assert is_hd_bisimulation(X, X, {(x, x) for x in X.cells()})


def test_filled_and_hollow_squares():
    assert find_hd_bisimulation(gallery.filled_square(), gallery.hollow_square()) is None
    assert find_hd_bisimulation(gallery.hollow_square(), gallery.filled_square()) is None


def test_renamed_copy():
    X = gallery.loop()
    Y, m = renamed_hda(random.Random(0), X)
    assert is_hd_bisimulation(X, Y, set(m.items()))
    assert find_hd_bisimulation(X, Y) is not None


def test_open_map_examples():
    X = gallery.a_par_cd()
    assert is_open_map({x: x for x in X.cells()}, X, X)
    H, F = gallery.hollow_square(), gallery.filled_square()
    assert not is_open_map({x: x for x in H.cells()}, H, F)
    U = coproduct(X, gallery.loop())
    inj = {x: f"0.{x}" for x in X.cells()}
    assert not is_open_map(inj, X, U)


def test_fold_is_open():
    Y = gallery.a_par_cd()
    Z, fold = doubled(Y)
    assert is_open_map(fold, Z, Y)
    R = span_relation({z: z for z in fold}, fold)
    assert is_hd_bisimulation(Z, Y, R)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_bisimilar_hdas_have_equal_languages(seed):
    rng = random.Random(seed)
    Y = random_grid(rng)
    Z, fold = doubled(Y)
    R = find_hd_bisimulation(Z, Y)
    assert R is not None and is_hd_bisimulation(Z, Y, R)
    assert enumerate_language(Z, 8, 16).members == enumerate_language(Y, 8, 16).members


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_unequal_languages_refute_bisimulation(s1, s2):
    X, Y = random_grid(random.Random(s1)), random_grid(random.Random(s2))
    R = find_hd_bisimulation(X, Y)
    LX, LY = enumerate_language(X, 8, 16), enumerate_language(Y, 8, 16)
    if LX.members != LY.members:
        assert R is None
    if R is not None:
        assert is_hd_bisimulation(X, Y, R)


def test_dump_pairs_grouped_by_dimension():
    X = gallery.concurrent_square()
    text = dump_pairs(X, {(x, x) for x in X.cells()})
    assert text.splitlines()[0] == "# dimension 0"
    assert "# dimension 2" in text
