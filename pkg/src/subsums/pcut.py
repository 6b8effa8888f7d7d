"""Planar sequences whose horizontal cut at height 0 is a set of P-sums.

For ``P = {0 = p_0 < ... }`` with nonzero elements ``p_1 < ... < p_{k-1}``
(``k = |P|``) and a positive nonincreasing ``a``, block ``n >= 0`` is the k
terms

    (0, b_n), (p_1 a_{n+1}, -b_n), ..., (p_{k-1} a_{n+1}, -b_n)

with ``b_n = yscale * base**-n``.  A subset of indices has zero y-sum exactly
when every block is either untouched or holds its leader plus one follower,
which turns the cut at 0 into S(P, a).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _kernels
from .cover1d import IntervalCover, _check_a, psum_cover, psum_values
from .cover2d import cover2d, cut_outer
from .errors import CoefficientNotInP, ConfigError, DepthBudgetExceeded, InvalidP, NonmonotoneA, SpecError
from .lattice import default_budget
from .scalar import ONE, ZERO, Scalar, as_scalar
from .series import Abs, Series1D, Series2D, pos_neg

Interval = Tuple[Scalar, Scalar]


@dataclass(frozen=True)
class PcutParams:
    P: Tuple[Scalar, ...]
    a: Series1D
    base: int
    yscale: Scalar = ONE

    @property
    def k(self) -> int:
        return len(self.P)

    @property
    def nonzero(self) -> Tuple[Scalar, ...]:
        return tuple(p for p in self.P if p != 0)

    def b(self, n: int) -> Scalar:
        return self.yscale / Scalar(self.base) ** n


def make_params(P: Iterable, a: Series1D, base: Optional[int] = None, yscale=ONE) -> PcutParams:
    """Validate and build :class:`PcutParams`; ``base`` defaults to ``k + 2``."""
    P = [as_scalar(p) for p in P]
    if not P or ZERO not in P:
        raise InvalidP("P must contain 0")
    if any(P[i] >= P[i + 1] for i in range(len(P) - 1)):
        raise InvalidP("P must be strictly increasing")
    k = len(P)
    base = k + 2 if base is None else int(base)
    if base < k + 2:
        raise InvalidP(f"base must be at least k+2 = {k + 2}")
    yscale = as_scalar(yscale)
    if yscale == 0:
        raise InvalidP("yscale must be nonzero")
    _check_a(Abs(a))  # |a_n| >= |a_{n+1}| > 0
    return PcutParams(tuple(P), a, base, yscale)


def pcut_params_from_config(obj: dict, path: str, ctx) -> PcutParams:
    from .series import spec_from_config

    P = obj["P"]
    if not isinstance(P, list):
        raise ConfigError("InvalidConfig", "P must be a list of scalar literals", f"{path}.P")
    Ps = [ctx.scalar(v, f"{path}.P[{i}]") for i, v in enumerate(P)]
    a = spec_from_config(obj["a"], f"{path}.a", ctx)
    if a.dim != 1:
        raise ConfigError("InvalidConfig", "a must be a 1D spec", f"{path}.a")
    base = obj.get("base")
    if base is not None and (not isinstance(base, int) or isinstance(base, bool)):
        raise ConfigError("InvalidConfig", "base must be an integer", f"{path}.base")
    ys = ctx.scalar(obj["yscale"], f"{path}.yscale") if "yscale" in obj else ONE
    return make_params(Ps, a, base, ys)


class PcutSeries(Series2D):
    """The block sequence of :class:`PcutParams` with exact tail sums."""

    def __init__(self, params: PcutParams):
        self.params = params

    def __eq__(self, other) -> bool:
        return isinstance(other, PcutSeries) and self.params == other.params

    def __hash__(self) -> int:
        return hash(self.params)

    def __repr__(self) -> str:
        return f"PcutSeries({self.params!r})"

    def term(self, n: int):
        if n < 1:
            raise ValueError("term index starts at 1")
        p = self.params
        if p.k == 1:
            return ZERO, ZERO
        blk, i = divmod(n - 1, p.k)
        if i == 0:
            return ZERO, p.b(blk)
        return p.nonzero[i - 1] * p.a.term(blk + 1), -p.b(blk)

    def tail(self, n: int):
        if n < 0:
            raise ValueError("tail index must be nonnegative")
        p = self.params
        if p.k == 1:
            return (ZERO, ZERO), (ZERO, ZERO)
        k = p.k
        blk, i = divmod(n, k)  # i terms of block ``blk`` already used
        xn = xp = yn = yp = ZERO
        # rest of the current block
        if i == 0:
            lead = pos_neg(p.b(blk))
            yn, yp = yn + lead[0], yp + lead[1]
        a_cur = p.a.term(blk + 1)
        for j in range(max(i, 1), k):
            xa, xb = pos_neg(p.nonzero[j - 1] * a_cur)
            ya, yb = pos_neg(-p.b(blk))
            xn, xp, yn, yp = xn + xa, xp + xb, yn + ya, yp + yb
        # full blocks blk+1, blk+2, ...
        am, ap = p.a.tail(blk + 1)
        for c in p.nonzero:
            if c.sign() > 0:
                xn, xp = xn + c * am, xp + c * ap
            else:
                xn, xp = xn + c * ap, xp + c * am
        rest = p.b(blk + 1) * p.base / (p.base - 1)  # sum_{m > blk} b_m
        for v in (rest, -rest * (k - 1)):
            ya, yb = pos_neg(v)
            yn, yp = yn + ya, yp + yb
        return (xn, xp), (yn, yp)

    def to_config(self) -> dict:
        p = self.params
        return {
            "kind": "pcut",
            "P": [str(v) for v in p.P],
            "a": p.a.to_config(),
            "base": p.base,
            "yscale": str(p.yscale),
        }


def build_pcut_sequence(params: PcutParams) -> PcutSeries:
    return PcutSeries(params)


def psum_witness(params: PcutParams, q: Sequence) -> Tuple[Scalar, FrozenSet[int]]:
    """Exact witness ``(w, A)`` that ``(w, 0)`` lies in E of the constructed sequence.

    ``w = sum q_n a_n``; ``A`` holds the leader ``k(n-1)+1`` and the follower
    carrying ``q_n`` for every ``n`` with ``q_n != 0``.
    """
    k = params.k
    index = {p: i for i, p in enumerate(params.nonzero, start=2)}
    w = ZERO
    A = set()
    for n, c in enumerate(q, start=1):
        c = as_scalar(c)
        if c == 0:
            continue
        if c not in index:
            raise CoefficientNotInP(f"coefficient {c} at position {n} is not in P")
        w = w + c * params.a.term(n)
        A.add(k * (n - 1) + 1)
        A.add(k * (n - 1) + index[c])
    return w, frozenset(A)


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True)
class Violation:
    block: int
    reason: str


def check_block_structure(A: Iterable[int], k: int) -> Union[Valid, Violation]:
    """Per block: untouched, or leader plus exactly one follower."""
    if k < 2:
        raise ValueError("block structure needs k >= 2")
    blocks: Dict[int, List[int]] = {}
    for idx in A:
        if idx < 1:
            raise ValueError("indices start at 1")
        blk, i = divmod(idx - 1, k)
        blocks.setdefault(blk, []).append(i + 1)
    for blk in sorted(blocks):
        members = blocks[blk]
        leader = 1 in members
        followers = len(members) - leader
        if leader and followers == 0:
            return Violation(blk, "leader without follower")
        if not leader:
            return Violation(blk, "followers without leader")
        if followers > 1:
            return Violation(blk, f"leader with {followers} followers")
    return Valid()


# ---------------------------------------------------------------------------
# verification


def hausdorff_one_sided(X: IntervalCover, Y: IntervalCover) -> Scalar:
    """Exact ``sup_{x in X} dist(x, Y)`` for nonempty interval unions."""
    if not X.intervals or not Y.intervals:
        raise ValueError("Hausdorff distance of an empty cover")
    ys = Y.intervals
    los = [lo for lo, _ in ys]

    def dist(x: Scalar) -> Scalar:
        i = _rightmost_le(los, x)
        best = None
        for j in (i, i + 1):
            if 0 <= j < len(ys):
                lo, hi = ys[j]
                d = lo - x if x < lo else (x - hi if x > hi else ZERO)
                best = d if best is None or d < best else best
        return best

    worst = ZERO
    for lo, hi in X.intervals:
        cands = [lo, hi]
        # distance to Y peaks at gap midpoints inside [lo, hi]
        for j in range(len(ys) - 1):
            g0, g1 = ys[j][1], ys[j + 1][0]
            mid = (g0 + g1) / 2
            if lo <= mid <= hi:
                cands.append(mid)
        for c in cands:
            d = dist(c)
            if d > worst:
                worst = d
    return worst


def _rightmost_le(los: List[Scalar], x: Scalar) -> int:
    lo, hi = 0, len(los)
    while lo < hi:
        mid = (lo + hi) // 2
        if los[mid] <= x:
            lo = mid + 1
        else:
            hi = mid
    return lo - 1


def _y_integer_weights(params: PcutParams, count: int) -> List[int]:
    # y_t / (yscale * base^-(m-1)) is +-base^(m-1-n), an integer
    m = -(-count // params.k)
    out = []
    for t in range(1, count + 1):
        blk, i = divmod(t - 1, params.k)
        w = params.base ** (m - 1 - blk)
        out.append(w if i == 0 else -w)
    return out


@dataclass
class PcutReport:
    P: Tuple[Scalar, ...]
    blocks: int
    zero_subsets: int
    block_violations: List[Tuple[FrozenSet[int], Violation]]
    sums_not_psums: List[FrozenSet[int]]
    h_cut_to_psum: Scalar
    h_psum_to_cut: Scalar
    tail_bound: Scalar
    certified_bound: Scalar
    witnesses_checked: int
    witness_failures: List[Tuple[Tuple[Scalar, ...], str]]
    cut_cover: IntervalCover = field(repr=False)
    psum_cover: IntervalCover = field(repr=False)

    @property
    def ok(self) -> bool:
        return (
            not self.block_violations
            and not self.sums_not_psums
            and not self.witness_failures
            and self.h_cut_to_psum <= self.certified_bound
            and self.h_psum_to_cut <= self.certified_bound
        )

    def to_text(self) -> str:
        lines = [
            f"P = {{{', '.join(str(p) for p in self.P)}}}",
            f"blocks = {self.blocks}",
            f"zero_y_subsets = {self.zero_subsets}",
            f"block_violations = {len(self.block_violations)}",
            f"sums_not_psums = {len(self.sums_not_psums)}",
            f"h(cut->psum) = {self.h_cut_to_psum}",
            f"h(psum->cut) = {self.h_psum_to_cut}",
            f"tail_bound = {self.tail_bound}",
            f"certified_bound = {self.certified_bound}",
            f"witnesses = {self.witnesses_checked}",
            f"witness_failures = {len(self.witness_failures)}",
            f"cut_intervals = {len(self.cut_cover)}",
            f"psum_intervals = {len(self.psum_cover)}",
            f"status = {'PASS' if self.ok else 'FAIL'}",
        ]
        return "\n".join(lines) + "\n"


def _coefficient_sample(P: Sequence[Scalar], m: int, limit: int) -> Iterable[Tuple[Scalar, ...]]:
    total = len(P) ** m
    if total <= limit:
        return itertools.product(P, repeat=m)
    rng = np.random.default_rng(0)
    idx = rng.integers(0, len(P), size=(limit, m))
    return [tuple(P[j] for j in row) for row in idx.tolist()]


def verify_pcut_cut(params: PcutParams, m: int, cap: Optional[int] = None, witness_limit: int = 4096) -> PcutReport:
    """Finite-depth check that the cut at 0 of the construction matches S(P, a).

    (a) every zero-y subset of the first ``k*m`` indices is block-valid and
    sums to a depth-m P-sum; (b) exact one-sided Hausdorff distances between
    the depth-``k*m`` cut cover and the depth-m P-sum cover; (c) witnesses for
    sampled coefficient lists lie in the cut cover.
    """
    cap = default_budget() if cap is None else cap
    k = params.k
    spec = build_pcut_sequence(params)
    r = params.a.tail(m)[1]
    Pmin, Pmax = params.P[0], params.P[-1]
    tail_bound = max(-Pmin, Pmax) * r
    psum = psum_cover(params.P, params.a, m, cap)
    if k == 1:
        return PcutReport(params.P, m, 1, [], [], ZERO, ZERO, tail_bound, tail_bound, 1, [], psum, psum)
    count = k * m
    if count > 62 or (1 << count) > cap:
        raise DepthBudgetExceeded(1 << count, cap)
    terms = spec.terms(count)
    masks = _kernels.zero_sum_masks(_y_integer_weights(params, count))
    psums = set(psum_values(params.P, params.a, m, cap))
    violations, off = [], []
    for mask in masks.tolist():
        A = frozenset(i + 1 for i in range(count) if mask >> i & 1)
        v = check_block_structure(A, k)
        if isinstance(v, Violation):
            violations.append((A, v))
            continue
        sx = ZERO
        for i in A:
            sx = sx + terms[i - 1][0]
        if sx not in psums:
            off.append(A)
    cut = cut_outer(cover2d(spec, count, cap), "y", ZERO)
    h_cp = hausdorff_one_sided(cut, psum)
    h_pc = hausdorff_one_sided(psum, cut)
    # cut intervals are w + [sum P^- r, sum P^+ r] around the same P-sums w
    pos = sum((p for p in params.P if p.sign() > 0), ZERO)
    neg = sum((p for p in params.P if p.sign() < 0), ZERO)
    certified = max((pos - Pmax) * r, (Pmin - neg) * r, ZERO)
    failures = []
    checked = 0
    for q in _coefficient_sample(params.P, m, witness_limit):
        checked += 1
        w, A = psum_witness(params, q)
        sy = ZERO
        for i in A:
            sy = sy + terms[i - 1][1]
        if sy != 0:
            failures.append((tuple(q), "nonzero y-sum"))
        elif not isinstance(check_block_structure(A, k), Valid):
            failures.append((tuple(q), "block structure"))
        elif w not in cut:
            failures.append((tuple(q), "outside cut cover"))
    return PcutReport(params.P, m, int(masks.size), violations, off, h_cp, h_pc, tail_bound, certified, checked, failures, cut, psum)
