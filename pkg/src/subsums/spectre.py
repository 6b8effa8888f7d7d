"""Spectre and center of distances of finite and lattice sets.

The spectre of ``A`` is the set of vectors ``x`` with ``y + x in A`` or
``y - x in A`` for every ``y in A``.  For finite ``A`` it equals the
intersection over ``a in A`` of ``(A - a) | (a - A)``, so the candidates from a
single seed point suffice and each candidate costs one linear scan of the
sorted lattice keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _kernels
from .errors import EmptySet, SpacingMismatch
from .lattice import KeySet, default_budget, subset_sum_vectors
from .scalar import ONE, ZERO, Scalar, as_scalar
from .series import Series1D, Series2D

Vector = Tuple[Scalar, ...]


def _as_vectors(A: Iterable) -> List[Vector]:
    out = []
    for p in A:
        if isinstance(p, tuple):
            out.append(tuple(as_scalar(c) for c in p))
        else:
            out.append((as_scalar(p),))
    return list(dict.fromkeys(out))


@dataclass(frozen=True)
class SpectreResult:
    """Exact spectre of a finite set; 1D vectors are 1-tuples."""

    vectors: FrozenSet[Vector]
    ambient: str

    def __contains__(self, x) -> bool:
        v = tuple(as_scalar(c) for c in x) if isinstance(x, tuple) else (as_scalar(x),)
        return v in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def sorted(self) -> List[Vector]:
        return sorted(self.vectors)

    def to_text(self) -> str:
        return "".join(" ".join(str(c) for c in v) + "\n" for v in self.sorted())


def _spectre_python(pts: List[Vector]) -> FrozenSet[Vector]:
    members = set(pts)
    y0 = pts[0]
    cands = set()
    for z in pts:
        d = tuple(a - b for a, b in zip(z, y0))
        cands.add(d)
        cands.add(tuple(-c for c in d))
    for y in pts:
        cands = {
            u
            for u in cands
            if tuple(a + b for a, b in zip(y, u)) in members or tuple(a - b for a, b in zip(y, u)) in members
        }
    return frozenset(cands)


def _spectre_keyset(ks: KeySet) -> FrozenSet[Vector]:
    seed = ks.sorted_points[0]
    cand = {}
    for z in ks.sorted_points:
        d = tuple(a - b for a, b in zip(z, seed))
        for u in (d, tuple(-c for c in d)):
            s = ks.shift_of(u)
            if s is not None:
                cand[s] = u
    shifts = sorted(cand)
    fails = _kernels.spectre_scan(ks.keys, np.asarray(shifts, dtype=np.int64))
    return frozenset(cand[s] for s, f in zip(shifts, fails.tolist()) if f < 0)


def spectre_of_finite_set(A: Iterable) -> SpectreResult:
    """Exact S(A) for a finite set of scalars or scalar tuples."""
    pts = _as_vectors(A)
    if not pts:
        raise EmptySet("spectre of an empty set")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ValueError("points of mixed dimension")
    ks = KeySet(pts, dim)
    vecs = _spectre_keyset(ks) if ks.ok else _spectre_python(pts)
    return SpectreResult(vecs, f"finite set of {len(pts)} points in R^{dim}")


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class GridSet:
    """Points ``origin + spacing * coordinate`` for integer coordinates in ``occupancy``."""

    spacing: Scalar
    occupancy: FrozenSet[Tuple[int, ...]]
    origin: Tuple[Scalar, Scalar] = (ZERO, ZERO)
    dim: int = 2
    name: str = ""

    def __post_init__(self):
        if not self.spacing.sign() > 0:
            raise SpacingMismatch("spacing must be positive")
        if any(len(c) != self.dim for c in self.occupancy):
            raise ValueError(f"coordinates must have length {self.dim}")

    def __len__(self) -> int:
        return len(self.occupancy)

    def points(self) -> List[Vector]:
        h = self.spacing
        org = self.origin[: self.dim]
        return [tuple(o + h * c for o, c in zip(org, coord)) for coord in sorted(self.occupancy)]

    def to_text(self) -> str:
        head = f"{self.spacing} {self.origin[0]} {self.origin[1]}\n"
        return head + "".join(" ".join(str(c) for c in coord) + "\n" for coord in sorted(self.occupancy))

    @classmethod
    def from_text(cls, text: str) -> "GridSet":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty grid text")
        head = lines[0].split()
        if len(head) != 3:
            raise ValueError("grid header must be 'spacing origin_x origin_y'")
        h, ox, oy = (as_scalar(v) for v in head)
        coords = [tuple(int(v) for v in ln.split()) for ln in lines[1:]]
        dim = len(coords[0]) if coords else 2
        return cls(h, frozenset(coords), (ox, oy), dim)


def spectre_of_grid(G: GridSet) -> SpectreResult:
    """Exact spectre of the grid point set (not of any continuous shape it samples)."""
    if not G.occupancy:
        raise EmptySet("spectre of an empty grid")
    coords = [tuple(Scalar(c) for c in coord) for coord in sorted(G.occupancy)]
    ks = KeySet(coords, G.dim)
    units = _spectre_keyset(ks) if ks.ok else _spectre_python(coords)
    h = G.spacing
    vecs = frozenset(tuple(h * c for c in u) for u in units)
    return SpectreResult(vecs, f"grid {G.name or 'set'} of {len(G)} points, spacing {h}")


def _inverse_spacing(spacing: Scalar) -> int:
    inv = ONE / spacing
    if not inv.is_rational or inv.as_fraction().denominator != 1:
        raise SpacingMismatch(f"1/spacing must be an integer, got spacing {spacing}")
    return int(inv.as_fraction())


def _ternary_digits(u: int, L: int) -> List[int]:
    out = []
    for _ in range(L):
        u, r = divmod(u, 3)
        out.append(r)
    return out


def _carpet_cells(u: int, N: int, L: int) -> List[int]:
    # level-L cells (closed, side 3^-L) containing the point u/N
    m = N // 3**L
    lo, r = divmod(u, m)
    cells = {lo} if r else {lo - 1, lo}
    return [c for c in cells if 0 <= c < 3**L]


def make_grid_shape(shape: str, spacing, level: int = 0, radius=ONE) -> GridSet:
    """Lattice sample of a standard shape at the given spacing.

    ``square``, ``triangle``: ``1/spacing`` integer.  ``disk``: centred at the
    origin with the given radius.  ``sierpinski``: grid points of the closed
    level-``level`` carpet approximant (a point belongs when one of the closed
    cells containing it has no ternary position with digit 1 in both
    coordinates); ``1/spacing`` must be a multiple of ``3**level``.
    ``cantor``: the depth-``level`` subsums of ``sum 2/3^n`` (1D).
    """
    h = as_scalar(spacing)
    if h.sign() <= 0:
        raise SpacingMismatch("spacing must be positive")
    if shape == "square":
        N = _inverse_spacing(h)
        occ = {(i, j) for i in range(N + 1) for j in range(N + 1)}
    elif shape == "triangle":
        N = _inverse_spacing(h)
        occ = {(i, j) for i in range(N + 1) for j in range(N + 1 - i)}
    elif shape == "disk":
        r = as_scalar(radius)
        R = (r / h).floor()
        r2 = r * r
        occ = {(i, j) for i in range(-R, R + 1) for j in range(-R, R + 1) if (h * i) * (h * i) + (h * j) * (h * j) <= r2}
    elif shape == "sierpinski":
        N = _inverse_spacing(h)
        if N % 3**level:
            raise SpacingMismatch(f"1/spacing must be a multiple of 3^{level}")
        cells = [_carpet_cells(u, N, level) for u in range(N + 1)]
        digits = {c: _ternary_digits(c, level) for c in range(3**level)}

        def kept(cx: int, cy: int) -> bool:
            return not any(a == 1 and b == 1 for a, b in zip(digits[cx], digits[cy]))

        occ = {(i, j) for i in range(N + 1) for j in range(N + 1) if any(kept(a, b) for a in cells[i] for b in cells[j])}
    elif shape == "cantor":
        N = _inverse_spacing(h)
        if N % 3**level:
            raise SpacingMismatch(f"1/spacing must be a multiple of 3^{level}")
        m = N // 3**level
        vals = {0}
        for n in range(1, level + 1):
            vals |= {v + 2 * 3 ** (level - n) for v in vals}
        return GridSet(h, frozenset((v * m,) for v in vals), dim=1, name=f"cantor({level})")
    else:
        raise ValueError(f"unknown shape {shape!r}")
    name = f"{shape}({level})" if shape == "sierpinski" else shape
    return GridSet(h, frozenset(occ), name=name)


# ---------------------------------------------------------------------------
# terms in the spectre


@dataclass(frozen=True)
class Pass:
    depth: int


@dataclass(frozen=True)
class Fail:
    index: int
    witness: Vector


def _enumerate(spec: Union[Series1D, Series2D], depth: int, cap: Optional[int]) -> Tuple[List[Vector], List[Vector]]:
    terms = spec.terms(depth)
    if spec.dim == 1:
        terms = [(t,) for t in terms]
    return terms, subset_sum_vectors(terms, spec.dim, cap)


def terms_in_spectre_report(spec: Union[Series1D, Series2D], depth: int, cap: Optional[int] = None) -> Union[Pass, Fail]:
    """Check that each of the first ``depth`` terms lies in the spectre of their subsums."""
    terms, pts = _enumerate(spec, depth, cap)
    members = set(pts)
    ks = KeySet(pts, spec.dim)
    for n, x in enumerate(terms, start=1):
        if ks.ok:
            s = ks.shift_of(x)
            if s is not None:
                f = int(_kernels.spectre_scan(ks.keys, np.array([s], dtype=np.int64))[0])
                if f < 0:
                    continue
                return Fail(n, ks.sorted_points[f])
        for y in pts:
            if tuple(a + b for a, b in zip(y, x)) not in members and tuple(a - b for a, b in zip(y, x)) not in members:
                return Fail(n, y)
    return Pass(depth)


def in_spectre(A: Iterable, x) -> bool:
    """Direct membership test of one vector in S(A)."""
    pts = _as_vectors(A)
    members = set(pts)
    v = tuple(as_scalar(c) for c in x) if isinstance(x, tuple) else (as_scalar(x),)
    return all(
        tuple(a + b for a, b in zip(y, v)) in members or tuple(a - b for a, b in zip(y, v)) in members for y in pts
    )


def center_of_distances_grid(G: GridSet) -> FrozenSet[Scalar]:
    """Exact center of distances of a 1D grid set: the nonnegative part of its spectre."""
    if G.dim != 1:
        raise ValueError("center of distances of grids is defined here for 1D grids")
    S = spectre_of_grid(G)
    return frozenset(v[0] for v in S.vectors if v[0].sign() >= 0)
