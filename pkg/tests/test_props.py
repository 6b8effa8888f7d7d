import numpy as np
import pytest

from subsums import props


@pytest.mark.parametrize("name", sorted(props.SUITES))
def test_suite_passes(name):
    r = props.run_suite(name, cases=50, seed=1)
    assert r.ok, r.line()


def test_deterministic_sets():
    a = props.random_set(np.random.default_rng([4, 2]), 2)
    b = props.random_set(np.random.default_rng([4, 2]), 2)
    assert a == b


def test_metrics():
    from subsums.scalar import Scalar

    p, q = (Scalar(1), Scalar(-2)), (Scalar(4), Scalar(2))
    assert props.linf(p, q) == 4 and props.l1(p, q) == 7


def test_line_format():
    assert props.SuiteResult("x", 3).line() == "PASS x: 3 cases, 0 failures"
