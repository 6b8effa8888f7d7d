import numpy as np
import pytest

from subsums.cover2d import enumerate_points
from subsums.errors import EmptySet, SpacingMismatch
from subsums.scalar import ONE, ZERO, Scalar
from subsums.series import FiniteList, Geometric, PairGenerator, PairList
from subsums.spectre import (
    GridSet,
    Pass,
    center_of_distances_grid,
    in_spectre,
    make_grid_shape,
    spectre_of_finite_set,
    spectre_of_grid,
    terms_in_spectre_report,
)

S = Scalar


def brute_spectre(points):
    """Direct definition over the candidate set (A - A) union (A + A) shifted by a seed."""
    pts = set(points)
    cands = {tuple(a - b for a, b in zip(p, q)) for p in pts for q in pts}
    out = set()
    for u in cands:
        if all(tuple(a + b for a, b in zip(y, u)) in pts or tuple(a - b for a, b in zip(y, u)) in pts for y in pts):
            out.add(u)
    return out


def brute_grid(G):
    h = G.spacing
    units = brute_spectre([tuple(S(c) for c in coord) for coord in G.occupancy])
    return {tuple(h * c for c in u) for u in units}


def test_finite_examples():
    assert spectre_of_finite_set([(ZERO, ZERO)]).vectors == {(ZERO, ZERO)}
    assert spectre_of_finite_set([S(0), S(1)]).vectors == {(S(-1),), (ZERO,), (ONE,)}
    with pytest.raises(EmptySet):
        spectre_of_finite_set([])


def test_square_cross():
    S_ = spectre_of_grid(make_grid_shape("square", S("1/4")))
    ts = [S(v) / 4 for v in (-2, -1, 0, 1, 2)]
    assert S_.vectors == {(t, ZERO) for t in ts} | {(ZERO, t) for t in ts}


def test_triangle_trivial():
    G = make_grid_shape("triangle", S("1/8"))
    assert len(G) == 45
    assert spectre_of_grid(G).vectors == {(ZERO, ZERO)} == brute_grid(G)


def test_disk_grid_matches_oracle():
    # the lattice disk keeps a small nontrivial spectre (see the acceptance notes)
    G = make_grid_shape("disk", S("1/8"), radius=ONE)
    assert len(G) == 197
    got = spectre_of_grid(G).vectors
    assert got == brute_grid(G)
    assert len(got) == 21
    assert (S("1/8"), S("1/8")) in got and (S("1/4"), S("1/8")) in got
    assert (S("1/8"), ZERO) not in got


def test_sierpinski_level3():
    G = make_grid_shape("sierpinski", S("1/27"), level=3)
    got = spectre_of_grid(G)
    assert got.vectors == brute_grid(G)
    assert (S("2/9"), ZERO) not in got and (S("2/3"), ZERO) not in got
    assert len(got) == 9


def test_grid_shapes():
    assert len(make_grid_shape("square", S("1/2"))) == 9
    disk = make_grid_shape("disk", ONE, radius=ONE)
    assert set(disk.points()) == {(ZERO, ZERO), (ONE, ZERO), (-ONE, ZERO), (ZERO, ONE), (ZERO, -ONE)}
    c2 = make_grid_shape("cantor", S("1/9"), level=2)
    assert [p[0] for p in c2.points()] == [S(0), S("2/9"), S("2/3"), S("8/9")]
    with pytest.raises(SpacingMismatch):
        make_grid_shape("square", S("2/5"))
    with pytest.raises(SpacingMismatch):
        make_grid_shape("sierpinski", S("1/9"), level=3)


def test_sierpinski_membership():
    G = make_grid_shape("sierpinski", S("1/9"), level=2)
    occ = G.occupancy
    assert (4, 4) not in occ  # centre of the middle hole
    assert (3, 3) in occ  # hole corner on a kept cell boundary
    assert (1, 1) in occ and (0, 0) in occ and (9, 9) in occ


def test_text_round_trip():
    G = make_grid_shape("triangle", S("1/4"))
    H = GridSet.from_text(G.to_text())
    assert H.occupancy == G.occupancy and H.spacing == G.spacing


def test_centers():
    assert center_of_distances_grid(make_grid_shape("cantor", S("1/3"), level=1)) == {S(0), S("2/3")}
    c3 = center_of_distances_grid(make_grid_shape("cantor", S("1/27"), level=3))
    assert {S("2/3"), S("2/9"), S("2/27")} <= c3
    assert center_of_distances_grid(GridSet(ONE, frozenset({(0,)}), dim=1)) == {ZERO}


def test_terms_in_spectre_and_counterexample():
    spec = PairGenerator(Geometric(ONE, S("1/4")), Geometric(ONE, S("1/5")))
    assert terms_in_spectre_report(spec, 10) == Pass(10)
    pts = list(enumerate_points(spec, 3))
    assert not in_spectre(pts, (S("1/4"), S("1/25")))
    assert in_spectre(pts, (S("1/4"), S("1/5")))


def test_terms_in_spectre_random():
    rng = np.random.default_rng(2)
    for _ in range(30):
        n = int(rng.integers(1, 13))
        spec = FiniteList([S(int(v)) / 3 for v in rng.integers(-9, 10, size=n)])
        assert terms_in_spectre_report(spec, n) == Pass(n)
        pairs = [(S(int(a)), S(int(b)) / 2) for a, b in rng.integers(-5, 6, size=(n, 2))]
        assert terms_in_spectre_report(PairList(pairs), n) == Pass(n)


def test_random_sets_match_oracle():
    rng = np.random.default_rng(4)
    for _ in range(150):
        dim = int(rng.integers(1, 3))
        pts = {tuple(S(int(v)) / 2 for v in row) for row in rng.integers(-4, 5, size=(int(rng.integers(1, 12)), dim))}
        assert spectre_of_finite_set(pts).vectors == brute_spectre(pts)

