"""Randomised property suites for spectra, center of distances and terms in the spectre.

Each suite draws its cases from a seeded numpy generator, so a suite with the
same ``(cases, seed)`` always checks the same sets.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cover1d import center_of_distances
from .cover2d import enumerate_points
from .lattice import subset_sum_vectors
from .scalar import ZERO, Scalar
from .series import FiniteList, PairList, Series1D, Series2D
from .spectre import spectre_of_finite_set, terms_in_spectre_report, Pass

Vector = Tuple[Scalar, ...]


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int = 0
    first_failure: Optional[str] = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"  first failure: {self.first_failure}" if self.first_failure else ""
        return f"{status} {self.name}: {self.cases} cases, {self.failures} failures{extra}"


def _rat(rng: np.random.Generator, lo: int, hi: int, den: int) -> Scalar:
    return Scalar(Fraction(int(rng.integers(lo, hi + 1)), den))


def random_set(rng: np.random.Generator, dim: int) -> List[Vector]:
    """A random finite set: either a sparse lattice sample or the subsums of a few random terms.

    Subsum sets have rich spectra, lattice samples mostly trivial ones; mixing
    both exercises both branches of every property.
    """
    den = int(rng.choice([1, 2, 3, 4]))
    if rng.random() < 0.5:
        n = int(rng.integers(1, 13))
        return list(dict.fromkeys(tuple(_rat(rng, -6, 6, den) for _ in range(dim)) for _ in range(n)))
    k = int(rng.integers(1, 6))
    terms = [tuple(_rat(rng, -5, 5, den) for _ in range(dim)) for _ in range(k)]
    shift = tuple(_rat(rng, -3, 3, den) for _ in range(dim))
    return [tuple(a + b for a, b in zip(p, shift)) for p in subset_sum_vectors(terms, dim)]


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _neg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def _apply(F, v: Vector) -> Vector:
    return (F[0][0] * v[0] + F[0][1] * v[1], F[1][0] * v[0] + F[1][1] * v[1])


def _spec_of(A) -> frozenset:
    return spectre_of_finite_set(A).vectors


# each check returns None on success or a short failure description


def check_zero(rng) -> Optional[str]:
    A = random_set(rng, int(rng.integers(1, 3)))
    S = _spec_of(A)
    zero = tuple(ZERO for _ in A[0])
    return None if zero in S else f"0 missing for A={A}"


def check_negation(rng) -> Optional[str]:
    A = random_set(rng, int(rng.integers(1, 3)))
    S = _spec_of(A)
    bad = [u for u in S if _neg(u) not in S]
    return None if not bad else f"{bad[0]} in S(A) but not its negative"


def check_containment(rng) -> Optional[str]:
    A = random_set(rng, int(rng.integers(1, 3)))
    zero = tuple(ZERO for _ in A[0])
    if zero not in A:
        A = A + [zero]
    members = set(A)
    S = _spec_of(A)
    bad = [u for u in S if u not in members and _neg(u) not in members]
    return None if not bad else f"{bad[0]} in S(A) outside A u -A"


def check_translation(rng) -> Optional[str]:
    dim = int(rng.integers(1, 3))
    A = random_set(rng, dim)
    t = tuple(_rat(rng, -7, 7, int(rng.integers(1, 6))) for _ in range(dim))
    return None if _spec_of(A) == _spec_of([_add(p, t) for p in A]) else f"translation by {t} changes S(A)"


def _invertible(rng):
    while True:
        F = [[_rat(rng, -3, 3, int(rng.integers(1, 4))) for _ in range(2)] for _ in range(2)]
        if F[0][0] * F[1][1] - F[0][1] * F[1][0] != 0:
            return F


def check_linear(rng) -> Optional[str]:
    A = random_set(rng, 2)
    F = _invertible(rng)
    lhs = _spec_of([_apply(F, p) for p in A])
    rhs = frozenset(_apply(F, u) for u in _spec_of(A))
    return None if lhs == rhs else f"S(F(A)) != F(S(A)) for F={F}"


def check_intersection_union(rng) -> Optional[str]:
    dim = int(rng.integers(1, 3))
    fam = [random_set(rng, dim) for _ in range(int(rng.integers(2, 5)))]
    inter = frozenset.intersection(*(_spec_of(A) for A in fam))
    union = list(dict.fromkeys(p for A in fam for p in A))
    S = _spec_of(union)
    bad = [u for u in inter if u not in S]
    return None if not bad else f"{bad[0]} in every S(A_i) but not in S(union)"


def check_decreasing_chain(rng) -> Optional[str]:
    dim = int(rng.integers(1, 3))
    B = random_set(rng, dim)
    chain = [B]
    for _ in range(int(rng.integers(1, 4))):
        cur = chain[-1]
        if len(cur) == 1:
            break
        keep = rng.random(len(cur)) < 0.7
        keep[int(rng.integers(0, len(cur)))] = True
        chain.append([p for p, k in zip(cur, keep) if k])
    inter = frozenset.intersection(*(_spec_of(C) for C in chain))
    S = _spec_of(chain[-1])  # the intersection of a decreasing chain is its last set
    bad = [u for u in inter if u not in S]
    return None if not bad else f"{bad[0]} in every S(B_i) but not in S(intersection)"


def _random_pairs(rng, n: int) -> List[Tuple[Scalar, Scalar]]:
    den = int(rng.choice([1, 2, 3, 4]))
    return [(_rat(rng, -6, 6, den), _rat(rng, -6, 6, den)) for _ in range(n)]


def check_componentwise(rng) -> Optional[str]:
    pairs = _random_pairs(rng, int(rng.integers(1, 7)))
    A = subset_sum_vectors(pairs, 2)
    Sx = _spec_of(subset_sum_vectors([(x,) for x, _ in pairs], 1))
    Sy = _spec_of(subset_sum_vectors([(y,) for _, y in pairs], 1))
    for u, v in _spec_of(A):
        if (u,) not in Sx or (v,) not in Sy:
            return f"({u},{v}) in S(E) but a component is not in the coordinate spectre"
    return None


def linf(p: Vector, q: Vector) -> Scalar:
    return max(abs(a - b) for a, b in zip(p, q))


def l1(p: Vector, q: Vector) -> Scalar:
    total = ZERO
    for a, b in zip(p, q):
        total = total + abs(a - b)
    return total


def check_distance(rng) -> Optional[str]:
    dim = int(rng.integers(1, 3))
    A = random_set(rng, dim)
    metric = linf if rng.random() < 0.5 else l1
    zero = tuple(ZERO for _ in range(dim))
    C = center_of_distances(A, metric)
    for u in _spec_of(A):
        if metric(u, zero) not in C:
            return f"d({u},0) not in C(A) under {metric.__name__}"
    return None


def random_spec(rng) -> Tuple[object, int]:
    """A random 1D or 2D finite spec and a depth <= 14."""
    n = int(rng.integers(1, 15))
    if rng.random() < 0.5:
        den = int(rng.choice([1, 2, 3, 5]))
        return FiniteList([_rat(rng, -9, 9, den) for _ in range(n)]), n
    return PairList(_random_pairs(rng, n)), n


def check_terms_in_spectre(rng) -> Optional[str]:
    spec, n = random_spec(rng)
    r = terms_in_spectre_report(spec, n)
    return None if isinstance(r, Pass) else f"term {r.index} of {spec!r} fails at {r.witness}"


SUITES: Dict[str, Callable] = {
    "zero-membership": check_zero,
    "negation-closure": check_negation,
    "containment-A-union-minus-A": check_containment,
    "translation-invariance": check_translation,
    "linear-equivariance": check_linear,
    "intersection-union": check_intersection_union,
    "decreasing-chain": check_decreasing_chain,
    "componentwise": check_componentwise,
    "distance-in-center": check_distance,
    "terms-in-spectre": check_terms_in_spectre,
}


def run_suite(name: str, cases: int = 500, seed: int = 0) -> SuiteResult:
    check = SUITES[name]
    rng = np.random.default_rng([seed, sorted(SUITES).index(name)])
    res = SuiteResult(name, cases)
    t0 = time.perf_counter()
    for _ in range(cases):
        msg = check(rng)
        if msg is not None:
            res.failures += 1
            if res.first_failure is None:
                res.first_failure = msg
    res.seconds = time.perf_counter() - t0
    return res


def run_all(cases: int = 500, seed: int = 0, names: Optional[Sequence[str]] = None) -> List[SuiteResult]:
    return [run_suite(n, cases, seed) for n in (names or SUITES)]
