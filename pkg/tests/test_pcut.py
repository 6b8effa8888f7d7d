import itertools

import numpy as np
import pytest

from subsums.cover1d import IntervalCover, psum_values
from subsums.cover2d import cover2d, cut_outer
from subsums.errors import CoefficientNotInP, InvalidP, NonmonotoneA
from subsums.pcut import (
    Valid,
    Violation,
    build_pcut_sequence,
    check_block_structure,
    hausdorff_one_sided,
    make_params,
    psum_witness,
    verify_pcut_cut,
)
from subsums.scalar import ONE, ZERO, Scalar
from subsums.series import Geometric, Prefix

S = Scalar
third = Geometric(ONE, S("1/3"))
half = Geometric(ONE, S("1/2"))
two_thirds = Geometric(S(2), S("1/3"))  # 2/3^n
P0129 = [0, 1, 2, 9]


def pair(x, y):
    return S(x), S(y)


def test_sequence_examples():
    assert build_pcut_sequence(make_params([0], third)).terms(5) == [(ZERO, ZERO)] * 5
    seq = build_pcut_sequence(make_params(P0129, third))
    assert seq.terms(4) == [pair(0, 1), pair("1/3", -1), pair("2/3", -1), pair(3, -1)]
    seq = build_pcut_sequence(make_params([0, 1], half))
    assert seq.terms(4)[2:] == [pair(0, "1/4"), pair("1/4", "-1/4")]


@pytest.mark.parametrize(
    "P, a, base, yscale",
    [(P0129, third, None, 1), ([0, 1], two_thirds, None, 1), ([-1, 0, 2], half, 7, "1/3"), ([0, 1, 2, 9], third, 6, "-1/6")],
)
def test_tail_matches_long_sums(P, a, base, yscale):
    seq = build_pcut_sequence(make_params(P, a, base, yscale))
    horizon = 120
    terms = seq.terms(horizon)
    (rxn, rxp), (ryn, ryp) = seq.tail(horizon)
    for n in range(0, 13):
        xn = sum((t[0] for t in terms[n:] if t[0].sign() < 0), ZERO) + rxn
        xp = sum((t[0] for t in terms[n:] if t[0].sign() > 0), ZERO) + rxp
        yn = sum((t[1] for t in terms[n:] if t[1].sign() < 0), ZERO) + ryn
        yp = sum((t[1] for t in terms[n:] if t[1].sign() > 0), ZERO) + ryp
        assert seq.tail(n) == ((xn, xp), (yn, yp))


def test_params_errors():
    with pytest.raises(InvalidP):
        make_params([1, 2], third)
    with pytest.raises(InvalidP):
        make_params([0, 2, 1], third)
    with pytest.raises(InvalidP):
        make_params([0, 1, 2], third, base=4)
    with pytest.raises(NonmonotoneA):
        make_params([0, 1], Prefix([S("1/9")], third))


def test_witness_examples():
    params = make_params(P0129, third)
    assert psum_witness(params, [0, 0, 0]) == (ZERO, frozenset())
    w, A = psum_witness(params, [9, 0, 2])
    assert w == S("83/27") and A == frozenset({1, 4, 9, 11})
    seq = build_pcut_sequence(params)
    assert sum((seq.term(i)[1] for i in A), ZERO) == 0
    assert psum_witness(make_params([0, 1], half), [1]) == (S("1/2"), frozenset({1, 2}))
    with pytest.raises(CoefficientNotInP):
        psum_witness(params, [3])


def test_block_structure_examples():
    assert check_block_structure({1, 4}, 4) == Valid()
    assert check_block_structure({1}, 4) == Violation(0, "leader without follower")
    assert check_block_structure({2, 3}, 4) == Violation(0, "followers without leader")
    assert check_block_structure({1, 2, 3}, 4) == Violation(0, "leader with 2 followers")
    assert check_block_structure({1, 2, 5}, 4) == Violation(1, "leader without follower")
    assert check_block_structure(set(), 3) == Valid()


def _zero_y_subsets_brute(params, m):
    # exhaustive scan of all 2^(km) subsets with integer-scaled y weights
    seq = build_pcut_sequence(params)
    ys = [t[1] for t in seq.terms(params.k * m)]
    unit = params.b(m - 1)
    w = np.array([int((y / unit).as_fraction()) for y in ys], dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for v in w:
        sums = np.concatenate([sums, sums + v])
    return np.flatnonzero(sums == 0)


@pytest.mark.parametrize("P, m", [([0, 1], 8), ([0, 1, 2], 8), ([0, 1, 2, 9], 6), ([-2, 0, 1, 5], 5), ([0, 1, 3, 4, 7], 4)])
def test_condition_exhaustive(P, m):
    params = make_params(P, third)
    k = params.k
    assert k * m <= 24
    masks = _zero_y_subsets_brute(params, m)
    # every zero-y subset is block-valid, so there are exactly k^m of them
    assert masks.size == k ** m
    for mask in masks.tolist():
        A = {i + 1 for i in range(k * m) if mask >> i & 1}
        assert check_block_structure(A, k) == Valid()


def test_larger_base_still_valid():
    params = make_params([0, 1, 2], third, base=11)
    masks = _zero_y_subsets_brute(params, 6)
    assert masks.size == 3 ** 6


def test_yscale_invariance():
    def cut(ys):
        seq = build_pcut_sequence(make_params(P0129, third, yscale=ys))
        return cut_outer(cover2d(seq, 12), "y", ZERO).intervals

    ref = cut(ONE)
    for ys in ("1/6", "5", "-2/3"):
        assert cut(S(ys)) == ref


def test_hausdorff_examples():
    X = IntervalCover.from_intervals([(S(0), S(1)), (S(3), S(4))])
    Y = IntervalCover.from_intervals([(S(0), S(4))])
    assert hausdorff_one_sided(X, Y) == 0
    assert hausdorff_one_sided(Y, X) == 1
    Z = IntervalCover.from_intervals([(S(5), S(6))])
    assert hausdorff_one_sided(X, Z) == 5
    assert hausdorff_one_sided(Z, X) == 2


def test_verify_examples():
    r = verify_pcut_cut(make_params([0], third), 3)
    assert r.ok and r.h_cut_to_psum == 0 and r.psum_cover.intervals == r.cut_cover.intervals
    r = verify_pcut_cut(make_params([0, 1], two_thirds), 4)
    assert r.ok and r.zero_subsets == 16 and r.tail_bound == S("1/81")
    assert r.h_cut_to_psum == 0 and r.h_psum_to_cut == 0
    assert "status = PASS" in r.to_text()


def test_verify_0129():
    r = verify_pcut_cut(make_params(P0129, third, 6, "1/6"), 4)
    assert r.ok
    assert r.zero_subsets == 256 and not r.block_violations and not r.sums_not_psums
    assert r.h_cut_to_psum == S("1/54") and r.h_psum_to_cut == 0
    assert r.certified_bound == S("1/54") and r.tail_bound == S("1/18")
    assert r.witnesses_checked == 256 and not r.witness_failures
    assert all(v in r.cut_cover for v in psum_values(P0129, third, 4))
