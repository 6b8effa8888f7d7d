from fractions import Fraction

import numpy as np
import pytest

from subsums.errors import ArityMismatch, ConfigError, NotEventuallyMonotone
from subsums.pcut import build_pcut_sequence, make_params
from subsums.scalar import ONE, ZERO, Scalar
from subsums.series import (
    Abs,
    AxisInterleave,
    DiagonalSum,
    FastFromIndex,
    FiniteList,
    Geometric,
    LinearMap,
    Mixed,
    Multigeometric,
    PairGenerator,
    PairList,
    Prefix,
    Prefix2,
    Scaled,
    SlowEverywhere,
    classify_convergence,
    combine,
    spec_from_config,
    tail_bounds,
    term_at,
)

S = Scalar
half = Geometric(ONE, S("1/2"))
quarter = Geometric(ONE, S("1/4"))
gn = Multigeometric((S(3), S(2)), S("1/4"))


def test_term_examples():
    assert term_at(half, 3) == S("1/8")
    assert term_at(gn, 3) == S("3/16")
    assert gn.terms(4) == [S("3/4"), S("1/2"), S("3/16"), S("1/8")]
    pc = build_pcut_sequence(make_params(["0", "1", "2", "9"], Geometric(ONE, S("1/3"))))
    assert term_at(pc, 4) == (S(3), S(-1))


def test_tail_examples():
    assert tail_bounds(half, 0) == (ZERO, ONE)
    assert tail_bounds(gn, 2) == (ZERO, S("5/12"))
    assert tail_bounds(FiniteList([ONE, -ONE]), 1) == (-ONE, ZERO)


def _brute_tail(spec, n, horizon=80):
    neg, pos = ZERO, ZERO
    for t in spec.terms(horizon)[n:]:
        if t.sign() < 0:
            neg = neg + t
        else:
            pos = pos + t
    return neg, pos


@pytest.mark.parametrize(
    "spec",
    [
        half,
        gn,
        Multigeometric((S(1), S(-2), S("1/3")), S("1/5")),
        Prefix([S(5), S(-1)], Geometric(S("2/3"), S("1/3"))),
        Scaled(S("-3/2"), gn),
        Abs(Multigeometric((S(-1), S(2)), S("1/7"))),
        Geometric(S(1), S("1/2") * S("sqrt(2)")),
    ],
)
def test_tail_matches_long_partial_sums(spec):
    # the remainder after 80 terms is added back from the closed form of tail(80)
    for n in (0, 1, 2, 3, 7, 20):
        neg, pos = _brute_tail(spec, n)
        rn, rp = spec.tail(80)
        assert (neg + rn, pos + rp) == spec.tail(n)


def test_convergence_examples():
    assert classify_convergence(half) == SlowEverywhere()
    assert classify_convergence(quarter) == FastFromIndex(1)
    m = classify_convergence(gn)
    assert isinstance(m, Mixed)
    assert m.verdicts[:2] == ("slow", "fast")


def test_geometric_slow_iff_q_at_least_half():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        den = int(rng.integers(2, 400))
        q = S(Fraction(int(rng.integers(1, den)), den))
        verdict = classify_convergence(Geometric(ONE, q))
        assert isinstance(verdict, SlowEverywhere) == (q >= S("1/2"))
        assert isinstance(verdict, FastFromIndex) == (q < S("1/2"))


def test_classify_rejects_non_monotone():
    with pytest.raises(NotEventuallyMonotone):
        classify_convergence(Multigeometric((S(1), S(2)), S("1/4")))


def test_cartesian_axes_terms():
    sq = combine("cartesian_axes", half, half)
    assert sq.terms(3) == [(S("1/2"), ZERO), (ZERO, S("1/2")), (S("1/4"), ZERO)]
    assert sq.tail(0) == ((ZERO, ONE), (ZERO, ONE))
    assert sq.tail(3) == ((ZERO, S("1/4")), (ZERO, S("1/2")))


def test_prefix_and_diagonal():
    sq = AxisInterleave(half, half)
    fig = combine("prefix", [(1, 1)] * 4, sq)
    assert fig.terms(5)[:4] == [(ONE, ONE)] * 4 and fig.term(5) == (S("1/2"), ZERO)
    diag = combine("diagonal_sum", sq, PairList([(-1, 1)]), PairGenerator(quarter, quarter))
    # anti-diagonal order x^1_1, x^2_1, x^1_2, x^3_1, x^2_2, x^1_3
    assert diag.terms(6) == [
        (S("1/2"), ZERO),
        (-ONE, ONE),
        (ZERO, S("1/2")),
        (S("1/4"), S("1/4")),
        (ZERO, ZERO),
        (S("1/4"), ZERO),
    ]
    # parts consumed (3, 2, 1) terms: tails (1/4,1/2), (0,0) and (1/12,1/12)
    assert diag.consumed(6) == [3, 2, 1]
    assert diag.tail(6) == ((ZERO, S("1/3")), (ZERO, S("7/12")))


def test_linear_map_tail_encloses():
    inner = PairGenerator(quarter, Geometric(ONE, S("1/5")))
    lm = LinearMap([[1, -2], [3, 1]], inner)
    for n in range(6):
        (xm, xp), (ym, yp) = lm.tail(n)
        # every subsum of the next 8 terms lies in the enclosure
        pts = lm.terms(n + 8)[n:]
        for mask in range(1 << len(pts)):
            sx = sum((pts[i][0] for i in range(len(pts)) if mask >> i & 1), ZERO)
            sy = sum((pts[i][1] for i in range(len(pts)) if mask >> i & 1), ZERO)
            assert xm <= sx <= xp and ym <= sy <= yp


def test_combine_arity():
    with pytest.raises(ArityMismatch):
        combine("cartesian_axes", half)
    with pytest.raises(ArityMismatch):
        combine("linear_map", [[1, 0], [0, 1]], half)
    with pytest.raises(ArityMismatch):
        combine("nope", half)


@pytest.mark.parametrize(
    "spec",
    [
        half,
        gn,
        FiniteList([S("1/2"), S("sqrt(2)")]),
        Prefix([S(1)], quarter),
        Scaled(S(2), Abs(gn)),
        AxisInterleave(half, gn),
        PairGenerator(half, Geometric(ONE, S("1/2") * S("sqrt(2)"))),
        DiagonalSum([AxisInterleave(half, half), PairList([(-1, 1)])]),
        Prefix2([(1, 1)], AxisInterleave(half, half)),
        LinearMap([[0, 1], [1, 0]], AxisInterleave(half, quarter)),
    ],
)
def test_config_round_trip(spec):
    again = spec_from_config(spec.to_config())
    assert again.to_config() == spec.to_config()
    assert again.fingerprint == spec.fingerprint
    assert again.terms(6) == spec.terms(6)


def test_config_errors():
    with pytest.raises(ConfigError) as e:
        spec_from_config({"kind": "geometric", "q": "0.5"})
    assert e.value.code == "BadScalarLiteral"
    with pytest.raises(ConfigError) as e:
        spec_from_config({"kind": "spiral"})
    assert e.value.code == "UnknownKind"
    with pytest.raises(ConfigError) as e:
        spec_from_config({"kind": "finite", "terms": ["sqrt(2)", "sqrt(3)"]})
    assert e.value.code == "MixedRadicand"
    with pytest.raises(ConfigError) as e:
        spec_from_config({"kind": "geometric", "c": "1", "q": "1/2", "extra": 1})
    assert e.value.location.endswith("extra")
