"""Symbolic descriptions of absolutely convergent series in R and R^2.

Every constructor gives exact per-term access and closed-form tail bounds:
``tail(n)`` returns ``(Tminus, Tplus)``, the sums of the negative and positive
parts of the terms after index ``n``, so every subsum of the tail lies in
``[Tminus, Tplus]``.

One-dimensional specs all reduce to a :class:`Canonical1D` form: a finite
prefix followed by a (possibly empty) multigeometric block ``(s_1..s_k; q)``.
Tails, classification and certificates are computed from that form.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Optional, Sequence, Tuple, Union

from .errors import (
    ArityMismatch,
    BadScalarLiteral,
    ConfigError,
    MixedRadicand,
    NotEventuallyMonotone,
    SpecError,
)
from .scalar import ONE, ZERO, Scalar, as_scalar

Pair = Tuple[Scalar, Scalar]
Bounds = Tuple[Scalar, Scalar]

__all__ = [
    "Series1D",
    "Series2D",
    "FiniteList",
    "Geometric",
    "Multigeometric",
    "Prefix",
    "Scaled",
    "Abs",
    "PairList",
    "AxisInterleave",
    "DiagonalSum",
    "Prefix2",
    "LinearMap",
    "PairGenerator",
    "Canonical1D",
    "SlowEverywhere",
    "FastFromIndex",
    "Mixed",
    "term_at",
    "tail_bounds",
    "classify_convergence",
    "combine",
    "spec_from_config",
    "pos_neg",
]


def pos_neg(x: Scalar) -> Bounds:
    """Return ``(negative part, positive part)`` of ``x``."""
    return (x, ZERO) if x.sign() < 0 else (ZERO, x)


def _sum(values: Iterable[Scalar]) -> Scalar:
    total = ZERO
    for v in values:
        total = total + v
    return total


def _check_ratio(q: Scalar) -> None:
    if not (ZERO < q < ONE):
        raise SpecError(f"ratio q must lie in (0,1), got {q}")


# ---------------------------------------------------------------------------
# one-dimensional specs


@dataclass(frozen=True)
class Canonical1D:
    """``prefix`` followed by the multigeometric block ``(s; q)``.

    An empty ``s`` means every term after the prefix is zero.
    """

    prefix: Tuple[Scalar, ...]
    s: Tuple[Scalar, ...] = ()
    q: Optional[Scalar] = None

    @property
    def finite(self) -> bool:
        return not self.s or all(v == 0 for v in self.s)

    def term(self, n: int) -> Scalar:
        L = len(self.prefix)
        if n <= L:
            return self.prefix[n - 1]
        if not self.s:
            return ZERO
        m, k = n - L, len(self.s)
        return self.s[(m - 1) % k] * self.q ** (-(-m // k))

    def _periodic_tail(self, m: int) -> Bounds:
        # sums of negative/positive parts of periodic terms with index > m
        if not self.s:
            return ZERO, ZERO
        k = len(self.s)
        j, r = divmod(m, k)
        qj1 = self.q ** (j + 1)
        neg, pos = ZERO, ZERO
        for v in self.s[r:]:
            n_, p_ = pos_neg(v)
            neg, pos = neg + n_, pos + p_
        neg, pos = neg * qj1, pos * qj1
        full_neg = _sum(pos_neg(v)[0] for v in self.s)
        full_pos = _sum(pos_neg(v)[1] for v in self.s)
        factor = qj1 * self.q / (ONE - self.q)
        return neg + full_neg * factor, pos + full_pos * factor

    def tail(self, n: int) -> Bounds:
        L = len(self.prefix)
        if n >= L:
            return self._periodic_tail(n - L)
        neg, pos = self._periodic_tail(0)
        for v in self.prefix[n:]:
            n_, p_ = pos_neg(v)
            neg, pos = neg + n_, pos + p_
        return neg, pos

    def scaled(self, f: Scalar) -> "Canonical1D":
        return Canonical1D(tuple(f * v for v in self.prefix), tuple(f * v for v in self.s), self.q)

    def absolute(self) -> "Canonical1D":
        return Canonical1D(tuple(abs(v) for v in self.prefix), tuple(abs(v) for v in self.s), self.q)


class Series1D:
    """Base class of one-dimensional series specs."""

    dim = 1

    def canonical(self) -> Canonical1D:
        raise NotImplementedError

    @cached_property
    def _canon(self) -> Canonical1D:
        return self.canonical()

    def term(self, n: int) -> Scalar:
        if n < 1:
            raise ValueError("term index starts at 1")
        return self._canon.term(n)

    def tail(self, n: int) -> Bounds:
        if n < 0:
            raise ValueError("tail index must be nonnegative")
        return self._canon.tail(n)

    def terms(self, n: int) -> list:
        return [self.term(i) for i in range(1, n + 1)]

    def to_config(self) -> dict:
        raise NotImplementedError

    @property
    def fingerprint(self) -> str:
        return _fingerprint(self.to_config())


@dataclass(frozen=True, eq=True)
class FiniteList(Series1D):
    values: Tuple[Scalar, ...]

    def __init__(self, values: Iterable):
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in values))

    def canonical(self) -> Canonical1D:
        return Canonical1D(self.values)

    def to_config(self) -> dict:
        return {"kind": "finite", "terms": [str(v) for v in self.values]}


@dataclass(frozen=True, eq=True)
class Geometric(Series1D):
    """Terms ``c * q**n`` for ``n = 1, 2, ...``."""

    c: Scalar
    q: Scalar

    def __init__(self, c, q):
        object.__setattr__(self, "c", as_scalar(c))
        object.__setattr__(self, "q", as_scalar(q))
        _check_ratio(self.q)

    def canonical(self) -> Canonical1D:
        return Canonical1D((), (self.c,), self.q)

    def to_config(self) -> dict:
        return {"kind": "geometric", "c": str(self.c), "q": str(self.q)}


@dataclass(frozen=True, eq=True)
class Multigeometric(Series1D):
    """The block-periodic sequence ``s_1 q, ..., s_k q, s_1 q^2, ...``."""

    s: Tuple[Scalar, ...]
    q: Scalar

    def __init__(self, s: Iterable, q):
        s = tuple(as_scalar(v) for v in s)
        if not s:
            raise SpecError("multigeometric sequence needs at least one s value")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "q", as_scalar(q))
        _check_ratio(self.q)

    def canonical(self) -> Canonical1D:
        return Canonical1D((), self.s, self.q)

    def to_config(self) -> dict:
        return {"kind": "multigeometric", "s": [str(v) for v in self.s], "q": str(self.q)}


@dataclass(frozen=True, eq=True)
class Prefix(Series1D):
    values: Tuple[Scalar, ...]
    then: Series1D

    def __init__(self, values: Iterable, then: Series1D):
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in values))
        object.__setattr__(self, "then", then)

    def canonical(self) -> Canonical1D:
        inner = self.then.canonical()
        return Canonical1D(self.values + inner.prefix, inner.s, inner.q)

    def to_config(self) -> dict:
        return {"kind": "prefix", "terms": [str(v) for v in self.values], "then": self.then.to_config()}


@dataclass(frozen=True, eq=True)
class Scaled(Series1D):
    factor: Scalar
    inner: Series1D

    def __init__(self, factor, inner: Series1D):
        f = as_scalar(factor)
        if f == 0:
            raise SpecError("scale factor must be nonzero")
        object.__setattr__(self, "factor", f)
        object.__setattr__(self, "inner", inner)

    def canonical(self) -> Canonical1D:
        return self.inner.canonical().scaled(self.factor)

    def to_config(self) -> dict:
        return {"kind": "scaled", "factor": str(self.factor), "inner": self.inner.to_config()}


@dataclass(frozen=True, eq=True)
class Abs(Series1D):
    inner: Series1D

    def canonical(self) -> Canonical1D:
        return self.inner.canonical().absolute()

    def to_config(self) -> dict:
        return {"kind": "abs", "inner": self.inner.to_config()}


# ---------------------------------------------------------------------------
# two-dimensional specs

Matrix = Tuple[Tuple[Scalar, Scalar], Tuple[Scalar, Scalar]]


def _apply(m: Matrix, p: Pair) -> Pair:
    return (m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1])


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


def _scaled_bounds(f: Scalar, b: Bounds) -> Bounds:
    lo, hi = f * b[0], f * b[1]
    return (lo, hi) if f.sign() >= 0 else (hi, lo)


def _add_bounds(*bs: Bounds) -> Bounds:
    return _sum(b[0] for b in bs), _sum(b[1] for b in bs)


def _pair_parts(pairs: Iterable[Pair]) -> Tuple[Bounds, Bounds]:
    xn = xp = yn = yp = ZERO
    for x, y in pairs:
        a, b = pos_neg(x)
        c, d = pos_neg(y)
        xn, xp, yn, yp = xn + a, xp + b, yn + c, yp + d
    return (xn, xp), (yn, yp)


class Series2D:
    """Base class of planar series specs.

    ``tail(n)`` returns ``((Tx-, Tx+), (Ty-, Ty+))``.  ``tails_exact`` is
    False only when the tail is an interval enclosure rather than the exact
    sums of negative and positive parts (linear images of paired generators).
    """

    dim = 2
    tails_exact = True

    def term(self, n: int) -> Pair:
        raise NotImplementedError

    def tail(self, n: int) -> Tuple[Bounds, Bounds]:
        raise NotImplementedError

    def mapped_tail(self, m: Matrix, n: int) -> Tuple[Bounds, Bounds]:
        """Tail bounds of the image of this spec under ``m``.

        The default is the interval enclosure of ``m`` applied to the tail box.
        """
        bx, by = self.tail(n)
        return (
            _add_bounds(_scaled_bounds(m[0][0], bx), _scaled_bounds(m[0][1], by)),
            _add_bounds(_scaled_bounds(m[1][0], bx), _scaled_bounds(m[1][1], by)),
        )

    def terms(self, n: int) -> list:
        return [self.term(i) for i in range(1, n + 1)]

    def to_config(self) -> dict:
        raise NotImplementedError

    @property
    def fingerprint(self) -> str:
        return _fingerprint(self.to_config())


def _as_pair(p) -> Pair:
    if len(p) != 2:
        raise ArityMismatch(f"expected a pair, got {p!r}")
    return as_scalar(p[0]), as_scalar(p[1])


@dataclass(frozen=True, eq=True)
class PairList(Series2D):
    pairs: Tuple[Pair, ...]

    def __init__(self, pairs: Iterable):
        object.__setattr__(self, "pairs", tuple(_as_pair(p) for p in pairs))

    def term(self, n: int) -> Pair:
        return self.pairs[n - 1] if n <= len(self.pairs) else (ZERO, ZERO)

    def tail(self, n: int):
        return _pair_parts(self.pairs[n:])

    def mapped_tail(self, m: Matrix, n: int):
        return _pair_parts(_apply(m, p) for p in self.pairs[n:])

    def to_config(self) -> dict:
        return {"kind": "pairs", "terms": [[str(x), str(y)] for x, y in self.pairs]}


@dataclass(frozen=True, eq=True)
class AxisInterleave(Series2D):
    """``(x_1,0), (0,y_1), (x_2,0), (0,y_2), ...``; the achievement set is E(x) x E(y)."""

    xs: Series1D
    ys: Series1D

    def term(self, n: int) -> Pair:
        k = (n + 1) // 2
        return (self.xs.term(k), ZERO) if n % 2 else (ZERO, self.ys.term(k))

    def tail(self, n: int):
        return self.xs.tail((n + 1) // 2), self.ys.tail(n // 2)

    def mapped_tail(self, m: Matrix, n: int):
        tx, ty = self.tail(n)
        return (
            _add_bounds(_scaled_bounds(m[0][0], tx), _scaled_bounds(m[0][1], ty)),
            _add_bounds(_scaled_bounds(m[1][0], tx), _scaled_bounds(m[1][1], ty)),
        )

    def to_config(self) -> dict:
        return {"kind": "axis_interleave", "x": self.xs.to_config(), "y": self.ys.to_config()}


@dataclass(frozen=True, eq=True)
class PairGenerator(Series2D):
    """Pairs the n-th terms: ``(x_n, y_n)``."""

    xs: Series1D
    ys: Series1D

    def term(self, n: int) -> Pair:
        return self.xs.term(n), self.ys.term(n)

    def tail(self, n: int):
        return self.xs.tail(n), self.ys.tail(n)

    def to_config(self) -> dict:
        return {"kind": "pair_generator", "x": self.xs.to_config(), "y": self.ys.to_config()}


def _diagonal_position(n: int, rows: int) -> Tuple[int, int]:
    # anti-diagonal s holds (row, s - row) for row = min(rows, s-1) down to 1
    s = 2
    while True:
        count = min(rows, s - 1)
        if n <= count:
            row = min(rows, s - 1) - (n - 1)
            return row, s - row
        n -= count
        s += 1


@dataclass(frozen=True, eq=True)
class DiagonalSum(Series2D):
    """Diagonal enumeration ``x^1_1, x^2_1, x^1_2, x^3_1, x^2_2, x^1_3, ...``.

    Its achievement set is the algebraic sum of the parts' achievement sets.
    """

    parts: Tuple[Series2D, ...]

    def __init__(self, parts: Iterable[Series2D]):
        parts = tuple(parts)
        if not parts:
            raise ArityMismatch("diagonal_sum needs at least one spec")
        object.__setattr__(self, "parts", parts)

    def term(self, n: int) -> Pair:
        row, col = _diagonal_position(n, len(self.parts))
        return self.parts[row - 1].term(col)

    def consumed(self, n: int) -> list:
        counts = [0] * len(self.parts)
        for i in range(1, n + 1):
            row, _ = _diagonal_position(i, len(self.parts))
            counts[row - 1] += 1
        return counts

    def tail(self, n: int):
        tails = [p.tail(c) for p, c in zip(self.parts, self.consumed(n))]
        return _add_bounds(*(t[0] for t in tails)), _add_bounds(*(t[1] for t in tails))

    def mapped_tail(self, m: Matrix, n: int):
        tails = [p.mapped_tail(m, c) for p, c in zip(self.parts, self.consumed(n))]
        return _add_bounds(*(t[0] for t in tails)), _add_bounds(*(t[1] for t in tails))

    @property
    def tails_exact(self) -> bool:  # type: ignore[override]
        return all(p.tails_exact for p in self.parts)

    def to_config(self) -> dict:
        return {"kind": "diagonal_sum", "parts": [p.to_config() for p in self.parts]}


@dataclass(frozen=True, eq=True)
class Prefix2(Series2D):
    pairs: Tuple[Pair, ...]
    then: Series2D

    def __init__(self, pairs: Iterable, then: Series2D):
        object.__setattr__(self, "pairs", tuple(_as_pair(p) for p in pairs))
        object.__setattr__(self, "then", then)

    def term(self, n: int) -> Pair:
        L = len(self.pairs)
        return self.pairs[n - 1] if n <= L else self.then.term(n - L)

    def tail(self, n: int):
        L = len(self.pairs)
        if n >= L:
            return self.then.tail(n - L)
        head = _pair_parts(self.pairs[n:])
        rest = self.then.tail(0)
        return _add_bounds(head[0], rest[0]), _add_bounds(head[1], rest[1])

    def mapped_tail(self, m: Matrix, n: int):
        L = len(self.pairs)
        if n >= L:
            return self.then.mapped_tail(m, n - L)
        head = _pair_parts(_apply(m, p) for p in self.pairs[n:])
        rest = self.then.mapped_tail(m, 0)
        return _add_bounds(head[0], rest[0]), _add_bounds(head[1], rest[1])

    @property
    def tails_exact(self) -> bool:  # type: ignore[override]
        return self.then.tails_exact

    def to_config(self) -> dict:
        return {
            "kind": "prefix2",
            "terms": [[str(x), str(y)] for x, y in self.pairs],
            "then": self.then.to_config(),
        }


@dataclass(frozen=True, eq=True)
class LinearMap(Series2D):
    """Image of ``inner`` under the 2x2 matrix ``matrix`` (row-major)."""

    matrix: Matrix
    inner: Series2D

    def __init__(self, matrix, inner: Series2D):
        rows = tuple(tuple(as_scalar(v) for v in row) for row in matrix)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ArityMismatch("linear_map needs a 2x2 matrix")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "inner", inner)

    def term(self, n: int) -> Pair:
        return _apply(self.matrix, self.inner.term(n))

    def tail(self, n: int):
        return self.inner.mapped_tail(self.matrix, n)

    def mapped_tail(self, m: Matrix, n: int):
        return self.inner.mapped_tail(_matmul(m, self.matrix), n)

    @property
    def tails_exact(self) -> bool:  # type: ignore[override]
        return isinstance(self.inner, (PairList, AxisInterleave, Prefix2, DiagonalSum, LinearMap)) and (
            self.inner.tails_exact
        )

    def to_config(self) -> dict:
        return {
            "kind": "map",
            "matrix": [[str(v) for v in row] for row in self.matrix],
            "inner": self.inner.to_config(),
        }


Spec = Union[Series1D, Series2D]


def term_at(spec: Spec, n: int):
    """Exact n-th term (1-based) of a 1D or 2D spec."""
    if n < 1:
        raise ValueError("term index starts at 1")
    return spec.term(n)


def tail_bounds(spec: Spec, n: int):
    """Closed-form ``(Tminus, Tplus)`` of the tail after index ``n``, per coordinate."""
    if n < 0:
        raise ValueError("tail index must be nonnegative")
    return spec.tail(n)


def combine(kind: str, *args) -> Series2D:
    """Build a planar spec from parts.

    ``cartesian_axes(xs, ys)``, ``diagonal_sum(spec, ...)``,
    ``prefix(pairs, spec)`` and ``linear_map(matrix, spec)``.
    """
    if kind == "cartesian_axes":
        if len(args) != 2 or not all(isinstance(a, Series1D) for a in args):
            raise ArityMismatch("cartesian_axes takes two 1D specs")
        return AxisInterleave(*args)
    if kind == "diagonal_sum":
        if not args or not all(isinstance(a, Series2D) for a in args):
            raise ArityMismatch("diagonal_sum takes one or more 2D specs")
        return DiagonalSum(args)
    if kind == "prefix":
        if len(args) != 2 or not isinstance(args[1], Series2D):
            raise ArityMismatch("prefix takes a list of pairs and a 2D spec")
        return Prefix2(args[0], args[1])
    if kind == "linear_map":
        if len(args) != 2 or not isinstance(args[1], Series2D):
            raise ArityMismatch("linear_map takes a 2x2 matrix and a 2D spec")
        return LinearMap(args[0], args[1])
    raise ArityMismatch(f"unknown combinator {kind!r}")


# ---------------------------------------------------------------------------
# convergence classification


@dataclass(frozen=True)
class SlowEverywhere:
    """``x_n <= r_n`` for every n."""


@dataclass(frozen=True)
class FastFromIndex:
    """``x_k > r_k`` for every ``k >= index`` (and ``index`` is minimal)."""

    index: int


@dataclass(frozen=True)
class Mixed:
    verdicts: Tuple[str, ...]
    diagnostic: str = ""


def _verdict(canon: Canonical1D, n: int) -> str:
    return "slow" if canon.term(n) <= canon.tail(n)[1] else "fast"


def classify_convergence(spec: Series1D, report_len: int = 64):
    """Kakeya-type classification of a positive, eventually nonincreasing series.

    The periodic part of the canonical form repeats its slow/fast pattern with
    period ``k`` (term and tail both scale by ``q`` per block), so checking the
    prefix plus one period decides every index exactly.
    """
    canon = spec.canonical()
    if canon.finite:
        verdicts = tuple(_verdict(canon, n) for n in range(1, min(report_len, len(canon.prefix)) + 1))
        return Mixed(verdicts, "finite support: the series has finitely many nonzero terms")
    s, q = canon.s, canon.q
    if any(v.sign() <= 0 for v in s):
        raise NotEventuallyMonotone("periodic terms are not all positive")
    if any(s[i] < s[i + 1] for i in range(len(s) - 1)) or s[-1] < s[0] * q:
        raise NotEventuallyMonotone("periodic terms are not nonincreasing")
    L, k = len(canon.prefix), len(s)
    verdicts = tuple(_verdict(canon, n) for n in range(1, report_len + 1))
    prefix_ok = all(v.sign() > 0 for v in canon.prefix) and all(
        canon.term(n) >= canon.term(n + 1) for n in range(1, L + 1)
    )
    if not prefix_ok:
        return Mixed(verdicts, f"terms are not positive and nonincreasing before index {L + 1}")
    head = [_verdict(canon, n) for n in range(1, L + 1)]
    period = [_verdict(canon, n) for n in range(L + 1, L + k + 1)]
    if all(v == "slow" for v in head + period):
        return SlowEverywhere()
    if all(v == "fast" for v in period):
        last_slow = max((i + 1 for i, v in enumerate(head) if v == "slow"), default=0)
        return FastFromIndex(last_slow + 1)
    return Mixed(verdicts, f"periodic slow/fast pattern {''.join(v[0] for v in period)} with period {k}")


# ---------------------------------------------------------------------------
# config round trip


def _fingerprint(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()).hexdigest()[:16]


class ScalarContext:
    """Parses scalar literals for one computation, enforcing a single radicand."""

    def __init__(self):
        self.d = 1

    def scalar(self, value: Any, path: str) -> Scalar:
        if not isinstance(value, str):
            raise ConfigError("BadScalarLiteral", f"expected a string literal, got {value!r}", path)
        try:
            s = as_scalar(value)
        except BadScalarLiteral as exc:
            raise ConfigError("BadScalarLiteral", str(exc), path) from None
        if s.d != 1:
            if self.d not in (1, s.d):
                raise ConfigError("MixedRadicand", f"sqrt({s.d}) mixed with sqrt({self.d})", path)
            self.d = s.d
        return s


_KEYS = {
    "finite": {"terms"},
    "geometric": {"c", "q"},
    "multigeometric": {"s", "q"},
    "prefix": {"terms", "then"},
    "scaled": {"factor", "inner"},
    "abs": {"inner"},
    "pairs": {"terms"},
    "axis_interleave": {"x", "y"},
    "pair_generator": {"x", "y"},
    "diagonal_sum": {"parts"},
    "prefix2": {"terms", "then"},
    "map": {"matrix", "inner"},
    "pcut": {"P", "a", "base", "yscale"},
}
_OPTIONAL = {"pcut": {"base", "yscale"}, "geometric": {"c"}}


def spec_from_config(obj: Any, path: str = "spec", ctx: Optional[ScalarContext] = None) -> Spec:
    """Build a spec from its JSON-style config object.

    Errors are :class:`ConfigError` carrying the offending field path.
    """
    ctx = ctx or ScalarContext()
    if not isinstance(obj, dict):
        raise ConfigError("InvalidConfig", "spec must be an object", path)
    kind = obj.get("kind")
    if kind not in _KEYS:
        raise ConfigError("UnknownKind", f"unknown spec kind {kind!r}", f"{path}.kind")
    allowed = _KEYS[kind] | {"kind"}
    for key in obj:
        if key not in allowed:
            raise ConfigError("InvalidConfig", f"unknown key {key!r} for kind {kind!r}", f"{path}.{key}")
    for key in _KEYS[kind] - _OPTIONAL.get(kind, set()):
        if key not in obj:
            raise ConfigError("InvalidConfig", f"missing key {key!r}", f"{path}.{key}")

    def sc(key):
        return ctx.scalar(obj[key], f"{path}.{key}")

    def sc_list(key):
        vals = obj[key]
        if not isinstance(vals, list):
            raise ConfigError("InvalidConfig", "expected a list", f"{path}.{key}")
        return [ctx.scalar(v, f"{path}.{key}[{i}]") for i, v in enumerate(vals)]

    def pair_list(key):
        vals = obj[key]
        if not isinstance(vals, list):
            raise ConfigError("InvalidConfig", "expected a list of pairs", f"{path}.{key}")
        out = []
        for i, p in enumerate(vals):
            if not isinstance(p, list) or len(p) != 2:
                raise ConfigError("InvalidConfig", "expected a pair", f"{path}.{key}[{i}]")
            out.append((ctx.scalar(p[0], f"{path}.{key}[{i}][0]"), ctx.scalar(p[1], f"{path}.{key}[{i}][1]")))
        return out

    def sub(key, dim):
        spec = spec_from_config(obj[key], f"{path}.{key}", ctx)
        if spec.dim != dim:
            raise ConfigError("InvalidConfig", f"expected a {dim}D spec", f"{path}.{key}")
        return spec

    try:
        if kind == "finite":
            return FiniteList(sc_list("terms"))
        if kind == "geometric":
            return Geometric(sc("c") if "c" in obj else ONE, sc("q"))
        if kind == "multigeometric":
            return Multigeometric(sc_list("s"), sc("q"))
        if kind == "prefix":
            return Prefix(sc_list("terms"), sub("then", 1))
        if kind == "scaled":
            return Scaled(sc("factor"), sub("inner", 1))
        if kind == "abs":
            return Abs(sub("inner", 1))
        if kind == "pairs":
            return PairList(pair_list("terms"))
        if kind == "axis_interleave":
            return AxisInterleave(sub("x", 1), sub("y", 1))
        if kind == "pair_generator":
            return PairGenerator(sub("x", 1), sub("y", 1))
        if kind == "diagonal_sum":
            parts = obj["parts"]
            if not isinstance(parts, list):
                raise ConfigError("InvalidConfig", "expected a list of specs", f"{path}.parts")
            specs = [spec_from_config(p, f"{path}.parts[{i}]", ctx) for i, p in enumerate(parts)]
            if any(s.dim != 2 for s in specs):
                raise ConfigError("InvalidConfig", "diagonal_sum parts must be 2D", f"{path}.parts")
            return DiagonalSum(specs)
        if kind == "prefix2":
            return Prefix2(pair_list("terms"), sub("then", 2))
        if kind == "map":
            m = obj["matrix"]
            if not (isinstance(m, list) and len(m) == 2 and all(isinstance(r, list) and len(r) == 2 for r in m)):
                raise ConfigError("InvalidConfig", "matrix must be 2x2", f"{path}.matrix")
            rows = [[ctx.scalar(v, f"{path}.matrix[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(m)]
            return LinearMap(rows, sub("inner", 2))
        # kind == "pcut"
        from .pcut import pcut_params_from_config, build_pcut_sequence

        return build_pcut_sequence(pcut_params_from_config(obj, path, ctx))
    except (SpecError, MixedRadicand) as exc:
        if isinstance(exc, MixedRadicand):
            raise ConfigError("MixedRadicand", str(exc), path) from None
        raise ConfigError("InvalidConfig", str(exc), path) from None
