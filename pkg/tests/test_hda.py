import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdalang import gallery
from hdalang.errors import LabelBroken
from hdalang.hda import (
    coproduct,
    empty_hda,
    find_hda_map,
    make_hda,
    parse_text,
    pushout_embeddings,
    standard_cube_hda,
    subsumption_to_map,
    tensor,
    to_text,
    track_object,
    validate_map,
    yoneda_map,
)
from hdalang.ipomset import (
    LinearPomset,
    decompose_interval,
    from_word,
    identity,
    subsumes,
    validate_ipomset,
)
from hdalang.precubical import validate_precubical

from helpers import count_admissible_maps, random_grid, random_interval_ipomset


def test_track_object_counts():
    BN = track_object(gallery.ipomset_N())
    assert BN.complex.counts() == (8, 10, 3)
    assert track_object(gallery.ipomset_2p2()).complex.counts() == (9, 12, 4)
    BQ = track_object(gallery.ipomset_N(interfaces=True))
    # positions follow the canonical order c, a, d, b
    assert BQ.initial == ("0*00",) and BQ.accepting == ("11*1",)


def test_track_object_of_identity():
    B = track_object(identity(LinearPomset.from_labels("a")))
    assert B.complex.counts() == (2, 1)
    assert B.initial == B.accepting == ("*",)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_track_object_counts_match_brute_force(seed):
    P = random_interval_ipomset(random.Random(seed), n_max=5)
    assert track_object(P).complex.counts() == count_admissible_maps(P)


def test_track_object_labels_follow_event_order():
    P = validate_ipomset("xy", {"x": "a", "y": "b"}, [], [("y", "x")])
    B = track_object(P)
    (top,) = B.cells(2)
    assert B.label(top) == ("b", "a")


def test_standard_cube_hda():
    H = standard_cube_hda(LinearPomset.from_labels("abc"))
    assert H.complex.counts() == (8, 12, 6, 1)
    assert H.initial == ("000",) and H.accepting == ("111",)


def test_coproduct_counts_add():
    X, Y = gallery.a_par_cd(), gallery.loop()
    U = coproduct(X, Y)
    assert U.complex.counts() == tuple(a + b for a, b in zip(X.complex.counts(), Y.complex.counts()))
    assert coproduct(X, empty_hda()).complex.counts() == X.complex.counts()


def test_tensor_of_two_chains():
    X, Y = track_object(from_word("ab")), track_object(from_word("cd"))
    T = tensor(X, Y)
    assert T.complex.counts() == (9, 12, 4)
    for sq in T.cells(2):
        assert T.label(sq)[0] in "ab" and T.label(sq)[1] in "cd"


def test_tensor_with_point_is_isomorphic():
    X = gallery.a_par_cd()
    v = make_hda(validate_precubical({"v": 0}, {}), {}, ["v"], ["v"])
    T = tensor(X, v)
    assert T.complex.counts() == X.complex.counts()
    f = find_hda_map(X, T)
    g = find_hda_map(T, X)
    assert f is not None and g is not None
    assert len(set(f.values())) == len(f)


def test_identity_map_and_label_breaking_map():
    X = gallery.a_par_cd()
    validate_map({x: x for x in X.cells()}, X, X)
    Z = make_hda(X.complex, {e: "z" for e in X.edge_labels})
    with pytest.raises(LabelBroken):
        validate_map({x: x for x in X.cells()}, X, Z, interfaces=False)


def test_yoneda_maps_are_valid():
    X = gallery.track_picture()
    for x in X.cells():
        cube, f = yoneda_map(X, x)
        validate_map(f, cube, X, interfaces=False)
        assert f[cube.cells(X.dim(x))[0]] == x


def test_find_map_examples():
    X = gallery.a_par_cd()
    P = gallery.a_par_cd_pomsets()[0]
    assert find_hda_map(X, X) is not None
    f = find_hda_map(track_object(P), X)
    validate_map(f, track_object(P), X)
    c = make_hda(
        validate_precubical({"u": 0, "v": 0, "e": 1}, {("e", 1, 0): "u", ("e", 1, 1): "v"}),
        {"e": "c"}, ["u"], ["v"],
    )
    assert find_hda_map(track_object(from_word("ab")), c) is None


def test_subsumption_map_path_into_square():
    ab = validate_ipomset("ab", {"a": "a", "b": "b"}, [("a", "b")], [])
    par = validate_ipomset("ab", {"a": "a", "b": "b"}, [], [("a", "b")])
    f = subsumes(ab, par)
    Bab, Bpar = track_object(ab), track_object(par)
    g = subsumption_to_map(f, Bab, Bpar)
    assert len(Bab.complex) == 5 and len(Bpar.complex) == 9
    validate_map(g, Bab, Bpar)
    assert len(set(g.values())) == len(g)
    ident = subsumption_to_map({"a": "a", "b": "b"}, Bpar, Bpar)
    assert all(k == v for k, v in ident.items())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_pushout_cover_and_intersection(seed):
    P = random_interval_ipomset(random.Random(seed), n_max=5)
    pieces = decompose_interval(P)
    if len(pieces) < 2:
        return
    Q, R = pieces[0], pieces[1]
    _check_pushout(Q, R)


def _check_pushout(Q, R):
    G, (BP, BQ, BR), j0, j1 = pushout_embeddings(Q, R)
    validate_map(j0, BQ, BP, interfaces=False)
    validate_map(j1, BR, BP, interfaces=False)
    im0, im1 = set(j0.values()), set(j1.values())
    assert im0 | im1 == set(BP.cells())
    BT = track_object(identity(Q.target_interface()))
    assert len(im0 & im1) == len(BT.complex)


def test_pushout_of_a_par_cd_pieces():
    Q, R = decompose_interval(gallery.a_par_cd_pomsets()[0])
    _check_pushout(Q, R)


def test_pushout_with_identity():
    Q = decompose_interval(gallery.a_par_cd_pomsets()[0])[0]
    G, (BP, BQ, BR), j0, j1 = pushout_embeddings(Q, identity(Q.target_interface()))
    assert set(j0.values()) == set(BP.cells())
    assert len(set(j0.values())) == len(j0)


def test_a_par_cd_counts():
    assert gallery.a_par_cd().complex.counts() == (6, 7, 2)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_text_round_trip(seed):
    X = random_grid(random.Random(seed))
    text = to_text(X)
    Y = parse_text(text)
    assert to_text(Y) == text
    assert find_hda_map(X, Y) is not None
