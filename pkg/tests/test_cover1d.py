import itertools

import numpy as np
import pytest

from subsums.cover1d import (
    CantorCode,
    FastTailCertificate,
    FinitePoints,
    Interval1,
    IntervalCover,
    IntervalUnion,
    NotCertified,
    SigmaCertificate,
    center_of_distances,
    classify_gn,
    cover1d,
    exact_set1d,
    gaps,
    merge_intervals,
    partial_sums,
    psum_cover,
    psum_values,
    representation_collisions,
    term_tail_equalities,
    validate_certificate,
)
from subsums.errors import EmptyCover, EmptySet, InvalidP, NonmonotoneA
from subsums.scalar import ONE, ZERO, Scalar
from subsums.series import FiniteList, Geometric, Multigeometric, Prefix, Scaled

S = Scalar
half = Geometric(ONE, S("1/2"))
quarter = Geometric(ONE, S("1/4"))
ternary = Geometric(S(2), S("1/3"))  # 2/3, 2/9, ...
gn = Multigeometric((S(3), S(2)), S("1/4"))
sigma4 = Multigeometric((ONE, ONE, ONE, ONE), S("1/6"))


def iv(*pairs):
    return tuple((S(a), S(b)) for a, b in pairs)


def test_cover_examples():
    assert cover1d(ternary, 1).intervals == iv(("0", "1/3"), ("2/3", "1"))
    assert cover1d(half, 3).intervals == iv(("0", "1"))
    assert str(cover1d(half, 3)) == "{[0,1]}"
    assert cover1d(gn, 2).intervals == iv(("0", "5/12"), ("1/2", "7/6"), ("5/4", "5/3"))


def test_gap_examples():
    assert gaps(cover1d(ternary, 1)) == list(iv(("1/3", "2/3")))
    assert gaps(cover1d(half, 3)) == []
    assert gaps(cover1d(gn, 2)) == list(iv(("5/12", "1/2"), ("7/6", "5/4")))
    with pytest.raises(EmptyCover):
        gaps(IntervalCover(()))


def test_merge_touching():
    assert merge_intervals(iv(("1", "2"), ("0", "1"), ("3", "4"))) == list(iv(("0", "2"), ("3", "4")))


@pytest.mark.parametrize("spec", [half, ternary, gn, sigma4, Prefix([S(-1), S("1/2")], quarter), Scaled(S(-1), gn)])
def test_nesting_and_soundness(spec):
    covers = [cover1d(spec, n) for n in range(9)]
    for a, b in zip(covers, covers[1:]):
        assert b.is_refinement_of(a)
    deep = partial_sums(spec, 10)
    tm, tp = spec.tail(10)
    for c in covers:
        # every depth-10 partial sum and its full tail range are inside every shallower cover
        assert all(c.contains_interval(s + tm, s + tp) for s in deep)


def test_ternary_classical():
    for n in range(11):
        c = cover1d(ternary, n)
        assert len(c) == 2 ** n
        assert all(hi - lo == S(3) ** -n for lo, hi in c)
        # left endpoints are the numbers with n ternary digits in {0, 2}
        expected = sorted(sum((S(d) * S(3) ** -(i + 1) for i, d in enumerate(ds)), ZERO) for ds in itertools.product((0, 2), repeat=n))
        assert [lo for lo, _ in c] == expected


def test_text_round_trip():
    c = cover1d(gn, 4)
    assert IntervalCover.from_text(c.to_text()).intervals == c.intervals


def test_exact_set_examples():
    assert exact_set1d(half) == Interval1(ZERO, ONE)
    assert exact_set1d(FiniteList([S(1), S(2)])) == FinitePoints(tuple(S(v) for v in (0, 1, 2, 3)))
    code = exact_set1d(quarter)
    assert isinstance(code, CantorCode)
    for n in range(1, 13):
        ivs = code.tail_intervals(n)
        assert all(a[1] < b[0] for a, b in zip(ivs, ivs[1:]))
        assert len(cover1d(quarter, n)) == 2 ** n
    assert isinstance(exact_set1d(gn), NotCertified)


def test_exact_set_prefix_and_signs():
    # a big first term followed by a slow tail leaves a gap
    ex = exact_set1d(Prefix([S(3)], half))
    assert ex == IntervalUnion(iv(("0", "1"), ("3", "4")))
    # negative terms shift the set: E(-x) = -E(x)
    assert exact_set1d(Scaled(S(-1), half)) == Interval1(S(-1), ZERO)


def test_classify_examples():
    r = classify_gn(half)
    assert r.verdict == "FiniteUnionIntervals" and validate_certificate(half, r)
    r = classify_gn(quarter)
    assert r.verdict == "Cantor" and isinstance(r.certificate, FastTailCertificate)
    assert validate_certificate(quarter, r)
    r = classify_gn(sigma4)
    assert r.verdict == "Cantor" and isinstance(r.certificate, SigmaCertificate)
    assert r.certificate.sigma == tuple(S(v) for v in range(5))
    assert validate_certificate(sigma4, r)
    r = classify_gn(gn)
    assert r.verdict == "KnownCantorval" and r.name == "Guthrie-Nymann"
    assert validate_certificate(gn, r)
    r = classify_gn(Scaled(S("1/7"), gn))
    assert r.verdict == "KnownCantorval"
    r = classify_gn(FiniteList([S(1), S(1)]))
    assert r.verdict == "Finite" and validate_certificate(FiniteList([S(1), S(1)]), r)


def test_undetermined_has_stats():
    spec = Multigeometric((S(4), S(1)), S("1/4"))
    r = classify_gn(spec, depth_budget=6)
    assert r.verdict == "Undetermined" and r.certificate is None
    assert r.stats["depth"] == 6 and r.stats["intervals"] >= 1


def test_tampered_certificate_rejected():
    r = classify_gn(sigma4)
    assert not validate_certificate(Multigeometric((ONE, ONE, ONE, ONE), S("1/4")), r)


def test_psum_examples():
    a = Geometric(S(2), S("1/3"))
    assert psum_cover([0, 1], a, 1).intervals == iv(("0", "1/3"), ("2/3", "1"))
    assert psum_cover([0, 1, 2], a, 1).intervals == iv(("0", "2"))
    assert psum_cover([0, 1, 2, 9], Geometric(ONE, S("1/3")), 1).intervals == iv(("0", "13/6"), ("3", "9/2"))


@pytest.mark.parametrize("depth", range(0, 9))
def test_psum_binary_matches_cover1d(depth):
    a = Geometric(S(2), S("1/3"))
    assert psum_cover([0, 1], a, depth).intervals == cover1d(a, depth).intervals


def test_psum_values_brute():
    a = Geometric(ONE, S("1/3"))
    P = [0, 1, 2, 9]
    got = psum_values(P, a, 3)
    brute = sorted({sum((S(c) * a.term(i + 1) for i, c in enumerate(cs)), ZERO) for cs in itertools.product(P, repeat=3)})
    assert got == brute


def test_psum_errors():
    with pytest.raises(InvalidP):
        psum_cover([1, 2], half, 2)
    with pytest.raises(NonmonotoneA):
        psum_cover([0, 1], Prefix([S("1/8")], half), 2)


def test_collisions():
    assert representation_collisions(quarter, 8).exact == ()
    assert representation_collisions(quarter, 8).potential == ()
    pot = representation_collisions(half, 3).potential
    assert (frozenset({1}), frozenset({2, 3})) in pot
    assert term_tail_equalities(half, 5) == [1, 2, 3, 4, 5]
    assert term_tail_equalities(quarter, 5) == []


def _brute_center(A):
    res = None
    for y in A:
        d = {abs(y - z) for z in A}
        res = d if res is None else res & d
    return res


def test_center_examples():
    assert center_of_distances([S(0)]) == {S(0)}
    assert center_of_distances([S(0), S(1), S(2)]) == {S(0), S(1)}
    c = center_of_distances([S(0), S("2/9"), S("2/3"), S("8/9")])
    assert S("2/3") in c and S("2/9") in c
    with pytest.raises(EmptySet):
        center_of_distances([])


def test_center_random_oracle():
    rng = np.random.default_rng(11)
    for _ in range(200):
        A = [S(int(v)) / 4 for v in rng.integers(-12, 12, size=int(rng.integers(1, 9)))]
        assert center_of_distances(A) == _brute_center(set(A))
