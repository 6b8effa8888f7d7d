"""Certified interval covers of achievement sets and P-sum sets on the line.

``cover1d(spec, n)`` is the union over the depth-n partial sums ``s`` of
``[s + Tminus, s + Tplus]``, where ``(Tminus, Tplus)`` bounds every subsum of
the tail.  It always contains E(spec) and shrinks as ``n`` grows.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DepthBudgetExceeded, EmptyCover, EmptySet, NonmonotoneA, NotEventuallyMonotone
from .lattice import default_budget, minkowski_sum_vectors, subset_sum_vectors
from .scalar import ONE, ZERO, Scalar, as_scalar
from .series import (
    Canonical1D,
    FastFromIndex,
    Mixed,
    Series1D,
    SlowEverywhere,
    _verdict,
    classify_convergence,
)

Interval = Tuple[Scalar, Scalar]


def merge_intervals(intervals: Iterable[Interval]) -> List[Interval]:
    """Sort and merge closed intervals; touching intervals merge too."""
    out: List[Interval] = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


@dataclass(frozen=True)
class IntervalCover:
    """Sorted, fully merged closed intervals with exact endpoints."""

    intervals: Tuple[Interval, ...]
    depth: int = 0
    fingerprint: str = ""

    @classmethod
    def from_intervals(cls, intervals: Iterable[Interval], depth: int = 0, fingerprint: str = "") -> "IntervalCover":
        return cls(tuple(merge_intervals(intervals)), depth, fingerprint)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __contains__(self, x) -> bool:
        x = as_scalar(x)
        i = bisect.bisect_right([lo for lo, _ in self.intervals], x) - 1
        return i >= 0 and x <= self.intervals[i][1]

    def contains_interval(self, lo: Scalar, hi: Scalar) -> bool:
        i = bisect.bisect_right([a for a, _ in self.intervals], lo) - 1
        return i >= 0 and hi <= self.intervals[i][1]

    def is_refinement_of(self, other: "IntervalCover") -> bool:
        """Every interval of ``self`` lies inside one interval of ``other``."""
        return all(other.contains_interval(lo, hi) for lo, hi in self.intervals)

    def hull(self) -> Interval:
        if not self.intervals:
            raise EmptyCover("empty cover has no hull")
        return self.intervals[0][0], self.intervals[-1][1]

    def total_length(self) -> Scalar:
        total = ZERO
        for lo, hi in self.intervals:
            total = total + (hi - lo)
        return total

    def to_text(self) -> str:
        return "".join(f"{lo} {hi}\n" for lo, hi in self.intervals)

    @classmethod
    def from_text(cls, text: str) -> "IntervalCover":
        rows = []
        for line in text.splitlines():
            if line.strip():
                lo, hi = line.split()
                rows.append((as_scalar(lo), as_scalar(hi)))
        return cls.from_intervals(rows)

    def __str__(self) -> str:
        return "{" + ", ".join(f"[{lo},{hi}]" for lo, hi in self.intervals) + "}"


def partial_sums(spec: Series1D, depth: int, cap: Optional[int] = None) -> List[Scalar]:
    """Sorted distinct subsums of the first ``depth`` terms."""
    sums = [v[0] for v in subset_sum_vectors([(t,) for t in spec.terms(depth)], 1, cap)]
    return sorted(sums)


def cover1d(spec: Series1D, depth: int, cap: Optional[int] = None) -> IntervalCover:
    """Outer cover of E(spec) from the depth-``depth`` partial sums and the exact tail."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    tm, tp = spec.tail(depth)
    sums = partial_sums(spec, depth, cap)
    return IntervalCover.from_intervals(((s + tm, s + tp) for s in sums), depth, spec.fingerprint)


def gaps(cover: IntervalCover) -> List[Interval]:
    """Bounded components of hull(cover) minus cover, as open intervals ``(lo, hi)``."""
    if not cover.intervals:
        raise EmptyCover("cover has no intervals")
    iv = cover.intervals
    return [(iv[i][1], iv[i + 1][0]) for i in range(len(iv) - 1)]


# ---------------------------------------------------------------------------
# exact sets


@dataclass(frozen=True)
class Interval1:
    lo: Scalar
    hi: Scalar


@dataclass(frozen=True)
class IntervalUnion:
    intervals: Tuple[Interval, ...]


@dataclass(frozen=True)
class FinitePoints:
    points: Tuple[Scalar, ...]


@dataclass(frozen=True)
class CantorCode:
    """``shift + prefix_sums + E(tail)`` where the tail after ``tail_start`` converges fast.

    ``tail_intervals(j)`` gives the pairwise disjoint depth-j intervals of
    the tail's achievement set.
    """

    prefix_sums: Tuple[Scalar, ...]
    tail_start: int
    tail_total: Scalar
    shift: Scalar
    canon: Canonical1D = field(repr=False, compare=False, default=None)

    def tail_intervals(self, j: int) -> List[Interval]:
        c = self.canon
        terms = [c.term(self.tail_start + i) for i in range(1, j + 1)]
        r = c.tail(self.tail_start + j)[1]
        sums = sorted(v[0] for v in subset_sum_vectors([(t,) for t in terms], 1))
        return [(s, s + r) for s in sums]


@dataclass(frozen=True)
class NotCertified:
    reason: str


def _sign_split(spec: Series1D) -> Tuple[Canonical1D, Canonical1D, Scalar]:
    # E(x) = E(|x|) + (sum of negative terms)
    canon = spec.canonical()
    return canon, canon.absolute(), canon.tail(0)[0]


def _head_period_verdicts(c: Canonical1D):
    L, k = len(c.prefix), len(c.s)
    head = [_verdict(c, n) for n in range(1, L + 1)]
    period = [_verdict(c, n) for n in range(L + 1, L + k + 1)]
    return head, period


def _periodic_monotone(c: Canonical1D) -> bool:
    s, q = c.s, c.q
    return all(v.sign() > 0 for v in s) and all(s[i] >= s[i + 1] for i in range(len(s) - 1)) and s[-1] >= s[0] * q


def slow_tail_index(c: Canonical1D) -> Optional[int]:
    """Smallest N with the positive tail after N nonincreasing and slowly convergent."""
    if c.finite or not _periodic_monotone(c):
        return None
    head, period = _head_period_verdicts(c)
    if any(v == "fast" for v in period):
        return None
    L = len(c.prefix)
    N = max((i + 1 for i, v in enumerate(head) if v == "fast"), default=0)
    for i in range(1, L + 1):
        if c.term(i).sign() <= 0 or c.term(i) < c.term(i + 1):
            N = max(N, i)
    return N


def fast_tail_index(c: Canonical1D) -> Optional[int]:
    """Smallest N such that every positive term after N exceeds its tail."""
    if c.finite or any(v.sign() <= 0 for v in c.s):
        return None
    head, period = _head_period_verdicts(c)
    if any(v == "slow" for v in period):
        return None
    N = max((i + 1 for i, v in enumerate(head) if v == "slow"), default=0)
    for i in range(1, len(c.prefix) + 1):
        if c.term(i).sign() <= 0:
            N = max(N, i)
    return N


def exact_set1d(spec: Series1D, cap: Optional[int] = None):
    """Exact description of E(spec) where a classical criterion applies.

    * finitely many nonzero terms -> :class:`FinitePoints`
    * tail slowly convergent from N -> union of ``[s, s + r_N]`` over depth-N sums
      (:class:`Interval1` when it is a single interval)
    * tail fast convergent from N -> :class:`CantorCode`
    * otherwise :class:`NotCertified`
    """
    canon, ac, shift = _sign_split(spec)
    if canon.finite:
        pts = sorted(v[0] for v in subset_sum_vectors([(t,) for t in canon.prefix], 1, cap))
        return FinitePoints(tuple(pts))
    N = slow_tail_index(ac)
    if N is not None:
        r = ac.tail(N)[1]
        sums = sorted(v[0] for v in subset_sum_vectors([(ac.term(i),) for i in range(1, N + 1)], 1, cap))
        ivs = merge_intervals((s + shift, s + r + shift) for s in sums)
        if len(ivs) == 1:
            return Interval1(*ivs[0])
        return IntervalUnion(tuple(ivs))
    N = fast_tail_index(ac)
    if N is not None:
        sums = sorted(v[0] for v in subset_sum_vectors([(ac.term(i),) for i in range(1, N + 1)], 1, cap))
        return CantorCode(tuple(sums), N, ac.tail(N)[1], shift, ac)
    return NotCertified("no slow or fast tail: the periodic slow/fast pattern is mixed")


# ---------------------------------------------------------------------------
# Guthrie-Nymann classification


@dataclass(frozen=True)
class FiniteCertificate:
    points: Tuple[Scalar, ...]


@dataclass(frozen=True)
class SlowTailCertificate:
    tail_start: int
    tail_total: Scalar
    shift: Scalar
    intervals: Tuple[Interval, ...]


@dataclass(frozen=True)
class FastTailCertificate:
    tail_start: int
    tail_total: Scalar


@dataclass(frozen=True)
class SigmaCertificate:
    """``q < 1/|Sigma|`` with Sigma the subset sums of ``s`` (absolute values)."""

    s: Tuple[Scalar, ...]
    q: Scalar
    sigma: Tuple[Scalar, ...]


@dataclass(frozen=True)
class RegistryCertificate:
    name: str
    s: Tuple[Scalar, ...]
    q: Scalar


Certificate = Union[FiniteCertificate, SlowTailCertificate, FastTailCertificate, SigmaCertificate, RegistryCertificate, None]


@dataclass(frozen=True)
class GNClassification:
    verdict: str
    certificate: Certificate = None
    name: str = ""
    stats: Dict[str, object] = field(default_factory=dict, compare=False)


CANTORVAL_REGISTRY: Dict[str, Tuple[Tuple[Scalar, ...], Scalar]] = {
    "Guthrie-Nymann": ((Scalar(3), Scalar(2)), Scalar(1) / 4),
}


def register_cantorval(name: str, s: Sequence, q) -> None:
    """Register a multigeometric ``(s; q)`` whose achievement set is a known M-Cantorval."""
    CANTORVAL_REGISTRY[name] = (tuple(as_scalar(v) for v in s), as_scalar(q))


def _registry_match(c: Canonical1D) -> Optional[str]:
    if c.prefix or not c.s:
        return None
    for name, (s, q) in CANTORVAL_REGISTRY.items():
        if len(s) != len(c.s) or q != c.q:
            continue
        lam = c.s[0] / s[0]
        if lam.sign() > 0 and all(a == lam * b for a, b in zip(c.s, s)):
            return name
    return None


def _sigma(s: Sequence[Scalar]) -> List[Scalar]:
    return sorted({sum(sub, ZERO) for r in range(len(s) + 1) for sub in itertools.combinations(s, r)})


def classify_gn(spec: Series1D, depth_budget: int = 12) -> GNClassification:
    """Topological type of E(spec), each non-Undetermined verdict with a certificate.

    Verdicts: ``Finite``, ``FiniteUnionIntervals``, ``Cantor``,
    ``KnownCantorval`` (registry entries only) and ``Undetermined``.
    """
    canon, ac, shift = _sign_split(spec)
    if canon.finite:
        pts = tuple(sorted(v[0] for v in subset_sum_vectors([(t,) for t in canon.prefix], 1)))
        return GNClassification("Finite", FiniteCertificate(pts))
    ex = exact_set1d(spec)
    if isinstance(ex, (Interval1, IntervalUnion)):
        ivs = ((ex.lo, ex.hi),) if isinstance(ex, Interval1) else ex.intervals
        N = slow_tail_index(ac)
        return GNClassification("FiniteUnionIntervals", SlowTailCertificate(N, ac.tail(N)[1], shift, ivs))
    if isinstance(ex, CantorCode):
        return GNClassification("Cantor", FastTailCertificate(ex.tail_start, ex.tail_total))
    s_abs = ac.s
    if s_abs and all(v.sign() > 0 for v in s_abs):
        sig = _sigma(s_abs)
        if ac.q * len(sig) < ONE:
            return GNClassification("Cantor", SigmaCertificate(s_abs, ac.q, tuple(sig)))
    name = _registry_match(ac)
    if name is not None:
        return GNClassification("KnownCantorval", RegistryCertificate(name, ac.s, ac.q), name=name)
    stats: Dict[str, object] = {"depth": depth_budget}
    try:
        cov = cover1d(spec, depth_budget)
        stats.update(intervals=len(cov), gaps=max(len(cov) - 1, 0), total_length=str(cov.total_length()))
    except DepthBudgetExceeded as exc:
        stats["budget_exceeded"] = exc.states
    return GNClassification("Undetermined", None, stats=stats)


def validate_certificate(spec: Series1D, result: GNClassification) -> bool:
    """Re-check a classification from the series alone, without the classifier's code path."""
    cert = result.certificate
    canon = spec.canonical()
    ac = canon.absolute()
    if result.verdict == "Undetermined":
        return cert is None
    if isinstance(cert, FiniteCertificate):
        brute = {sum(sub, ZERO) for r in range(len(canon.prefix) + 1) for sub in itertools.combinations(canon.prefix, r)}
        return canon.finite and set(cert.points) == brute
    if canon.finite:
        return False
    L, k = len(ac.prefix), len(ac.s)
    # one full period past the prefix decides every later index (term and tail scale by q)
    stop = max(L, 0) + k + 1
    if isinstance(cert, SlowTailCertificate):
        N = cert.tail_start
        idx = range(N + 1, max(stop, N + k + 1) + 1)
        slow = all(ac.term(n) <= _tail_sum(ac, n) for n in idx)
        mono = all(ac.term(n) >= ac.term(n + 1) > 0 for n in idx)
        if not (slow and mono and cert.tail_total == _tail_sum(ac, N)):
            return False
        heads = {sum(sub, ZERO) for r in range(N + 1) for sub in itertools.combinations([ac.term(i) for i in range(1, N + 1)], r)}
        shift = canon.tail(0)[0]
        return merge_intervals((h + shift, h + cert.tail_total + shift) for h in heads) == list(cert.intervals)
    if isinstance(cert, FastTailCertificate):
        N = cert.tail_start
        idx = range(N + 1, max(stop, N + k + 1) + 1)
        return all(ac.term(n) > _tail_sum(ac, n) for n in idx)
    if isinstance(cert, SigmaCertificate):
        brute = {sum(sub, ZERO) for r in range(len(cert.s) + 1) for sub in itertools.combinations(cert.s, r)}
        return (
            tuple(ac.s) == tuple(cert.s)
            and ac.q == cert.q
            and len(brute) == len(cert.sigma)
            and cert.q < ONE / len(brute)
        )
    if isinstance(cert, RegistryCertificate):
        if cert.name not in CANTORVAL_REGISTRY or ac.prefix:
            return False
        s, q = CANTORVAL_REGISTRY[cert.name]
        lam = ac.s[0] / s[0]
        return ac.q == q and len(ac.s) == len(s) and lam.sign() > 0 and all(a == lam * b for a, b in zip(ac.s, s))
    return False


def _tail_sum(c: Canonical1D, n: int) -> Scalar:
    # sum_{i>n} x_i straight from the geometric-series formula, independent of Canonical1D.tail
    L, k = len(c.prefix), len(c.s)
    total = sum(c.prefix[n:], ZERO)
    m = max(n - L, 0)
    j, r = divmod(m, k)
    q = c.q
    block = sum(c.s, ZERO)
    total = total + sum(c.s[r:], ZERO) * q ** (j + 1) + block * q ** (j + 2) / (ONE - q)
    return total


# ---------------------------------------------------------------------------
# P-sums


def _check_a(a: Series1D) -> Canonical1D:
    c = a.canonical()
    if c.finite:
        raise NonmonotoneA("the sequence a must have infinitely many nonzero terms")
    seq_ok = all(v.sign() > 0 for v in c.prefix + c.s) and _periodic_monotone(c)
    L = len(c.prefix)
    seq_ok = seq_ok and all(c.term(i) >= c.term(i + 1) for i in range(1, L + 1))
    if not seq_ok:
        raise NonmonotoneA("a must be positive and nonincreasing")
    return c


def psum_values(P: Sequence, a: Series1D, depth: int, cap: Optional[int] = None) -> List[Scalar]:
    """Sorted distinct values ``sum_{n<=depth} e_n a_n`` with every ``e_n`` in P."""
    P = sorted({as_scalar(p) for p in P})
    groups = [[(p * a.term(n),) for p in P] for n in range(1, depth + 1)]
    return sorted(v[0] for v in minkowski_sum_vectors(groups, 1, cap))


def psum_cover(P: Sequence, a: Series1D, depth: int, cap: Optional[int] = None) -> IntervalCover:
    """Outer cover of S(P, a): depth-m P-sums plus ``[min(P) r_m, max(P) r_m]``."""
    Ps = sorted({as_scalar(p) for p in P})
    if not Ps or Ps[0] > 0 or Ps[-1] < 0 or ZERO not in Ps:
        from .errors import InvalidP

        raise InvalidP("P must be a nonempty finite set containing 0")
    _check_a(a)
    r = a.tail(depth)[1]
    lo, hi = Ps[0] * r, Ps[-1] * r
    vals = psum_values(Ps, a, depth, cap)
    return IntervalCover.from_intervals(((v + lo, v + hi) for v in vals), depth, a.fingerprint)


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class CollisionReport:
    """Pairs of distinct index subsets whose tail boxes meet (``potential``) or whose sums agree (``exact``)."""

    depth: int
    potential: Tuple[Tuple[FrozenSet[int], FrozenSet[int]], ...]
    exact: Tuple[Tuple[FrozenSet[int], FrozenSet[int]], ...]

    @property
    def unique_at_depth(self) -> bool:
        return not self.potential


def representation_collisions(spec, depth: int, cap: Optional[int] = None) -> CollisionReport:
    """All pairs of subsets of ``{1..depth}`` that could share a representation.

    Works for 1D and 2D specs: two subsets collide potentially when their
    closed tail boxes ``s + [Tminus, Tplus]`` intersect in every coordinate.
    """
    cap = default_budget() if cap is None else cap
    if (1 << depth) > cap:
        raise DepthBudgetExceeded(1 << depth, cap)
    terms = spec.terms(depth)
    if spec.dim == 1:
        terms = [(t,) for t in terms]
        tails = [spec.tail(depth)]
    else:
        tails = list(spec.tail(depth))
    dim = len(tails)
    zero = tuple(ZERO for _ in range(dim))
    entries = []
    for mask in range(1 << depth):
        s = zero
        for i in range(depth):
            if mask >> i & 1:
                s = tuple(a + b for a, b in zip(s, terms[i]))
        entries.append((s, frozenset(i + 1 for i in range(depth) if mask >> i & 1)))
    entries.sort(key=lambda e: e[0][0])
    widths = [tp - tm for tm, tp in tails]
    potential, exact = [], []
    for i, (si, ai) in enumerate(entries):
        for sj, aj in entries[i + 1 :]:
            if sj[0] - si[0] > widths[0]:
                break
            if all(abs(sj[c] - si[c]) <= widths[c] for c in range(1, dim)):
                pair = tuple(sorted((ai, aj), key=lambda a: sorted(a)))
                potential.append(pair)
                if si == sj:
                    exact.append(pair)
    key = lambda p: (sorted(p[0]), sorted(p[1]))
    return CollisionReport(depth, tuple(sorted(potential, key=key)), tuple(sorted(exact, key=key)))


def term_tail_equalities(spec: Series1D, depth: int) -> List[int]:
    """Indices ``n <= depth`` with ``x_n == sum_{i>n} x_i`` exactly."""
    out = []
    for n in range(1, depth + 1):
        tm, tp = spec.tail(n)
        if spec.term(n) == tm + tp:
            out.append(n)
    return out


# ---------------------------------------------------------------------------
# center of distances


def center_of_distances(A: Iterable, metric: Optional[Callable] = None) -> FrozenSet:
    """Exact ``C(A)``: distances realised from every point of the finite set A.

    Without ``metric`` the points are scalars with ``d(y, z) = |y - z|``.
    """
    pts = list(dict.fromkeys(as_scalar(p) if not isinstance(p, tuple) else p for p in A))
    if not pts:
        raise EmptySet("center of distances of an empty set")
    if metric is None:
        members = set(pts)
        y0 = pts[0]
        cands = {abs(z - y0) for z in pts}
        for y in pts[1:]:
            cands = {c for c in cands if (y + c) in members or (y - c) in members}
        return frozenset(cands)
    result = None
    for y in pts:
        dists = {metric(y, z) for z in pts}
        result = dists if result is None else result & dists
    return frozenset(result)
