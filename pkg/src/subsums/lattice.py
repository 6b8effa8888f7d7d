"""Exact embedding of Q(sqrt d)-vectors into integer lattices.

Subsums and spectra only use addition and subtraction, and the map
``a + b*sqrt(d) -> (a*D, b*D)`` (``D`` a common denominator) is an injective
group homomorphism into Z^2.  Vectors of scalars therefore become integer
vectors, and integer vectors inside a bounding box become single int64 keys
via a mixed-radix encoding that is linear in the vector.  The kernels in
:mod:`subsums._kernels` work on those keys.  When a box does not fit in
int64 the callers fall back to Python sets of :class:`Scalar` values.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .errors import DepthBudgetExceeded, MixedRadicand
from .scalar import Scalar

Vector = Tuple[Scalar, ...]

KEY_LIMIT = 1 << 62
DEFAULT_BUDGET = 1 << 22


def default_budget() -> int:
    """State cap for enumerations; ``SUBSUM_BUDGET`` overrides the default 2**22."""
    env = os.environ.get("SUBSUM_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


class Embedding:
    """Scale-and-split map from scalar vectors of length ``dim`` to integer vectors."""

    def __init__(self, dim: int, denominator: int, radicand: int):
        self.dim = dim
        self.D = denominator
        self.d = radicand
        self.width = dim * (2 if radicand > 1 else 1)

    @classmethod
    def for_vectors(cls, vectors: Iterable[Vector], dim: int) -> "Embedding":
        D, d = 1, 1
        for v in vectors:
            for s in v:
                D = math.lcm(D, s.a.denominator, s.b.denominator)
                if s.d != 1:
                    if d not in (1, s.d):
                        raise MixedRadicand(f"sqrt({d}) and sqrt({s.d}) in one set")
                    d = s.d
        return cls(dim, D, d)

    def encode(self, v: Vector) -> Tuple[int, ...]:
        D = self.D
        if self.d == 1:
            return tuple(int(s.a * D) for s in v)
        out: List[int] = []
        for s in v:
            out.append(int(s.a * D))
            out.append(int(s.b * D))
        return tuple(out)

    def encode_exact(self, v: Vector) -> Optional[Tuple[int, ...]]:
        """Like :meth:`encode` but None when ``v`` is off this lattice."""
        out: List[int] = []
        for s in v:
            if s.d not in (1, self.d):
                return None
            parts = (s.a * self.D, s.b * self.D) if self.d > 1 else (s.a * self.D,)
            for x in parts:
                if x.denominator != 1:
                    return None
                out.append(int(x))
        return tuple(out)

    def decode_rows(self, rows: np.ndarray) -> List[Vector]:
        D, d = self.D, self.d
        make = Scalar._make
        zero = Fraction(0)
        cols = [rows[:, j].tolist() for j in range(rows.shape[1])]
        out = []
        if d == 1:
            for vals in zip(*cols):
                out.append(tuple(make(Fraction(x, D), zero, 1) for x in vals))
        else:
            for vals in zip(*cols):
                out.append(tuple(make(Fraction(vals[2 * j], D), Fraction(vals[2 * j + 1], D), d) for j in range(self.dim)))
        return out

    def decode(self, ints: Sequence[int]) -> Vector:
        return self.decode_rows(np.array([ints], dtype=object))[0]


class Radix:
    """Mixed-radix key ``sum_j (v_j - lo_j) * stride_j`` over a box of widths ``widths``."""

    def __init__(self, lo: Sequence[int], widths: Sequence[int]):
        self.lo = list(lo)
        self.widths = list(widths)
        strides, acc = [], 1
        for w in self.widths:
            strides.append(acc)
            acc *= w
        self.strides = strides
        self.volume = acc

    @property
    def fits(self) -> bool:
        return self.volume < KEY_LIMIT

    def linear(self, v: Sequence[int]) -> int:
        return sum(x * s for x, s in zip(v, self.strides))

    def keys(self, rows: np.ndarray) -> np.ndarray:
        lo = np.asarray(self.lo, dtype=np.int64)
        st = np.asarray(self.strides, dtype=np.int64)
        return ((rows - lo) * st).sum(axis=1)

    def digits(self, keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        out = np.empty((keys.size, len(self.widths)), dtype=np.int64)
        for j, (s, w) in enumerate(zip(self.strides, self.widths)):
            out[:, j] = (keys // s) % w
        return out + np.asarray(self.lo, dtype=np.int64)


def subset_sum_vectors(vectors: Sequence[Vector], dim: int, cap: Optional[int] = None) -> List[Vector]:
    """All distinct sums ``sum_{i in A} v_i`` over subsets ``A`` of the given vectors.

    Raises :class:`DepthBudgetExceeded` when the distinct count exceeds ``cap``.
    The result is sorted lexicographically (first coordinate first).
    """
    cap = default_budget() if cap is None else cap
    emb = Embedding.for_vectors(vectors, dim)
    ints = [emb.encode(v) for v in vectors]
    w = emb.width
    lo = [sum(min(0, t[j]) for t in ints) for j in range(w)]
    hi = [sum(max(0, t[j]) for t in ints) for j in range(w)]
    radix = Radix(lo, [h - l + 1 for l, h in zip(lo, hi)])
    if radix.fits:
        weights = [radix.linear(t) for t in ints]
        sums, ok = _kernels.subset_sums(weights, cap)
        if not ok:
            raise DepthBudgetExceeded(int(sums.size), cap)
        keys = sums - radix.linear(lo)
        return _sorted_decode(emb, radix.digits(keys))
    return _subset_sums_python(vectors, dim, cap)


def minkowski_sum_vectors(groups: Sequence[Sequence[Vector]], dim: int, cap: Optional[int] = None) -> List[Vector]:
    """All distinct sums ``v_1 + ... + v_m`` with ``v_i`` drawn from ``groups[i]``."""
    cap = default_budget() if cap is None else cap
    emb = Embedding.for_vectors((v for g in groups for v in g), dim)
    ints = [[emb.encode(v) for v in g] for g in groups]
    w = emb.width
    lo = [sum(min(t[j] for t in g) for g in ints) for j in range(w)]
    hi = [sum(max(t[j] for t in g) for g in ints) for j in range(w)]
    radix = Radix(lo, [h - l + 1 for l, h in zip(lo, hi)])
    if radix.fits:
        sums, ok = _kernels.minkowski_sums([[radix.linear(t) for t in g] for g in ints], cap)
        if not ok:
            raise DepthBudgetExceeded(int(sums.size), cap)
        return _sorted_decode(emb, radix.digits(sums - radix.linear(lo)))
    zero = tuple(Scalar(0) for _ in range(dim))
    states = {zero}
    for g in groups:
        states = {tuple(a + b for a, b in zip(s, v)) for s in states for v in g}
        if len(states) > cap:
            raise DepthBudgetExceeded(len(states), cap)
    return sorted(states)


def _sorted_decode(emb: Embedding, rows: np.ndarray) -> List[Vector]:
    if emb.d == 1:
        # integer rows share the denominator D, so integer order is numeric order
        order = np.lexsort(rows.T[::-1])
        return emb.decode_rows(rows[order])
    return sorted(emb.decode_rows(rows))


def _subset_sums_python(vectors: Sequence[Vector], dim: int, cap: int) -> List[Vector]:
    zero = tuple(Scalar(0) for _ in range(dim))
    states = {zero}
    for v in vectors:
        if all(c == 0 for c in v):
            continue
        states |= {tuple(a + b for a, b in zip(s, v)) for s in states}
        if len(states) > cap:
            raise DepthBudgetExceeded(len(states), cap)
    return sorted(states)


class KeySet:
    """A finite set of scalar vectors encoded as sorted int64 keys with room for differences.

    Widths are ``3R+1`` per coordinate (``R`` the coordinate range) so that
    ``p + u`` never wraps for ``p`` in the set and ``|u_j| <= R_j``.
    """

    def __init__(self, points: Sequence[Vector], dim: int):
        self.dim = dim
        self.points = list(dict.fromkeys(points))
        self.emb = Embedding.for_vectors(self.points, dim)
        rows = np.array([self.emb.encode(p) for p in self.points], dtype=object)
        self.rows = rows.reshape(len(self.points), self.emb.width)
        mins = [min(int(x) for x in self.rows[:, j]) for j in range(self.emb.width)] if len(self.points) else []
        maxs = [max(int(x) for x in self.rows[:, j]) for j in range(self.emb.width)] if len(self.points) else []
        self.ranges = [b - a for a, b in zip(mins, maxs)]
        self.radix = Radix([m - r for m, r in zip(mins, self.ranges)], [3 * r + 1 for r in self.ranges])
        self.ok = self.radix.fits and all(abs(x) < KEY_LIMIT for x in mins + maxs)
        if self.ok:
            keys = self.radix.keys(self.rows.astype(np.int64))
            order = np.argsort(keys, kind="stable")
            self.keys = keys[order]
            self.sorted_points = [self.points[i] for i in order]

    def shift_of(self, u: Vector) -> Optional[int]:
        """Key shift of the difference vector ``u``.

        None when ``u`` is not a lattice vector of this set or leaves the
        difference box; such a ``u`` is never a difference of two points.
        """
        enc = self.emb.encode_exact(u)
        if enc is None or any(abs(x) > r for x, r in zip(enc, self.ranges)):
            return None
        return self.radix.linear(enc)

    def vector_of_shift(self, s: int) -> Vector:
        t = s + self.radix.linear(self.ranges)
        ints = [(t // st) % w - r for st, w, r in zip(self.radix.strides, self.radix.widths, self.ranges)]
        return self.emb.decode(ints)
