"""Box covers of planar achievement sets, with projections, cuts and finite point sets."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .cover1d import IntervalCover, representation_collisions
from .errors import DepthBudgetExceeded, EmptyCover
from .lattice import subset_sum_vectors
from .scalar import ONE, ZERO, Scalar, as_scalar
from .series import Canonical1D, Geometric, PairGenerator, Series1D, Series2D

Box = Tuple[Scalar, Scalar, Scalar, Scalar]  # xlo, xhi, ylo, yhi
Point = Tuple[Scalar, Scalar]


@dataclass(frozen=True)
class BoxCover:
    """Deduplicated, sorted list of closed boxes ``(xlo, xhi, ylo, yhi)``.

    Boxes are not merged; only projections and cuts are.
    """

    boxes: Tuple[Box, ...]
    depth: int = 0
    fingerprint: str = ""

    def __len__(self) -> int:
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)

    def contains_point(self, p: Point) -> bool:
        x, y = as_scalar(p[0]), as_scalar(p[1])
        return any(b[0] <= x <= b[1] and b[2] <= y <= b[3] for b in self.boxes)

    def contains_box(self, box: Box) -> bool:
        return any(b[0] <= box[0] and box[1] <= b[1] and b[2] <= box[2] and box[3] <= b[3] for b in self.boxes)

    def is_refinement_of(self, other: "BoxCover") -> bool:
        """Every box of ``self`` lies inside some box of ``other``."""
        if not self.boxes:
            return True
        if not other.boxes:
            return False
        boxes = sorted(other.boxes)  # by xlo
        xlos = [b[0] for b in boxes]
        wide = max(b[1] - b[0] for b in boxes)
        for b in self.boxes:
            # a container has xhi - wide <= xlo <= b.xlo
            i = bisect.bisect_left(xlos, b[1] - wide)
            j = bisect.bisect_right(xlos, b[0])
            if not any(c[1] >= b[1] and c[2] <= b[2] and b[3] <= c[3] for c in boxes[i:j]):
                return False
        return True

    def hull(self) -> Box:
        if not self.boxes:
            raise EmptyCover("empty cover has no hull")
        return (
            min(b[0] for b in self.boxes),
            max(b[1] for b in self.boxes),
            min(b[2] for b in self.boxes),
            max(b[3] for b in self.boxes),
        )

    def to_text(self) -> str:
        return "".join(" ".join(str(v) for v in b) + "\n" for b in self.boxes)

    @classmethod
    def from_text(cls, text: str) -> "BoxCover":
        boxes = []
        for line in text.splitlines():
            if line.strip():
                boxes.append(tuple(as_scalar(v) for v in line.split()))
        return cls(tuple(sorted(set(boxes))))


@dataclass(frozen=True)
class FinitePointSet2D:
    points: FrozenSet[Point]

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return (as_scalar(p[0]), as_scalar(p[1])) in self.points

    def __iter__(self):
        return iter(sorted(self.points))


def enumerate_points(spec: Series2D, depth: int, cap: Optional[int] = None) -> FinitePointSet2D:
    """Exact set of subsums of the first ``depth`` terms."""
    pts = subset_sum_vectors(spec.terms(depth), 2, cap)
    return FinitePointSet2D(frozenset(pts))


def cover2d(spec: Series2D, depth: int, cap: Optional[int] = None) -> BoxCover:
    """Outer box cover: each depth-``depth`` partial sum plus the tail box."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    (xm, xp), (ym, yp) = spec.tail(depth)
    pts = subset_sum_vectors(spec.terms(depth), 2, cap)
    # pts are distinct and sorted, so the boxes are too
    boxes = [(x + xm, x + xp, y + ym, y + yp) for x, y in pts]
    return BoxCover(tuple(boxes), depth, spec.fingerprint)


def _axis_index(axis: str) -> int:
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return 0 if axis == "x" else 1


def project_axis(cover: BoxCover, axis: str) -> IntervalCover:
    """Merged interval cover of the projection onto ``axis``."""
    if not cover.boxes:
        raise EmptyCover("cannot project an empty cover")
    j = 2 * _axis_index(axis)
    return IntervalCover.from_intervals(((b[j], b[j + 1]) for b in cover.boxes), cover.depth, cover.fingerprint)


def cut_outer(cover: BoxCover, axis: str, value) -> IntervalCover:
    """Outer cover of the cut at ``axis = value``.

    ``axis="y"`` gives the horizontal cut ``{x : (x, value) in E}``;
    ``axis="x"`` gives the vertical one.  Boundary contact counts.
    """
    v = as_scalar(value)
    j = 2 * _axis_index(axis)
    o = 2 - j
    ivs = [(b[o], b[o + 1]) for b in cover.boxes if b[j] <= v <= b[j + 1]]
    return IntervalCover.from_intervals(ivs, cover.depth, cover.fingerprint)


def check_symmetry(points: FinitePointSet2D, center: Point) -> bool:
    """True iff ``2*center - p`` is in the set for every point ``p``."""
    cx, cy = as_scalar(center[0]) * 2, as_scalar(center[1]) * 2
    pts = points.points
    return all((cx - x, cy - y) in pts for x, y in pts)


def symmetry_center(spec: Series2D, depth: int) -> Point:
    """Half of the depth-``depth`` partial total."""
    sx, sy = ZERO, ZERO
    for x, y in spec.terms(depth):
        sx, sy = sx + x, sy + y
    return sx / 2, sy / 2


# ---------------------------------------------------------------------------
# unique representations


def _period_range(c: Canonical1D) -> range:
    # for n > len(prefix) the pair (term, tail) scales by q every len(s) steps
    return range(1, len(c.prefix) + max(len(c.s), 1) + 1)


def no_term_tail_equality(c: Canonical1D) -> bool:
    """``x_n != sum_{i>n} x_i`` for every n, decided exactly."""
    for n in _period_range(c):
        tm, tp = c.tail(n)
        if c.term(n) == tm + tp:
            return False
    return True


def is_fast_everywhere(c: Canonical1D) -> bool:
    """Positive terms with ``x_n > r_n`` for all n: every point of E(x) has one representation."""
    if c.finite:
        return False
    if any(v.sign() <= 0 for v in c.prefix + c.s):
        return False
    return all(c.term(n) > c.tail(n)[1] for n in _period_range(c))


def _is_binary(c: Canonical1D) -> bool:
    return not c.prefix and len(c.s) == 1 and c.s[0].sign() > 0 and c.q == ONE / 2


@dataclass(frozen=True)
class UniqueRepresentation:
    """E(x_n, y_n) is a Cantor set because every point has one representation.

    ``reason`` is ``"fast-x"``/``"fast-y"`` (one coordinate is fast convergent)
    or ``"binary-x"``/``"binary-y"`` (one coordinate is ``c/2^n`` and the other
    never equals its own tail).
    """

    reason: str


def unique_representation_certificate(spec: Series2D) -> Optional[UniqueRepresentation]:
    """Certificate for a :class:`PairGenerator`, or None when no rule applies."""
    if not isinstance(spec, PairGenerator):
        return None
    cx, cy = spec.xs.canonical(), spec.ys.canonical()
    if is_fast_everywhere(cx):
        return UniqueRepresentation("fast-x")
    if is_fast_everywhere(cy):
        return UniqueRepresentation("fast-y")
    if _is_binary(cx) and not cy.finite and no_term_tail_equality(cy):
        return UniqueRepresentation("binary-x")
    if _is_binary(cy) and not cx.finite and no_term_tail_equality(cx):
        return UniqueRepresentation("binary-y")
    return None


@dataclass(frozen=True)
class PQStats:
    p: Scalar
    q: Scalar
    depth: int
    verdict: str
    reason: str
    boxes: int
    potential_collisions: int
    exact_collisions: int
    disjoint: bool = field(default=False)


def _boxes_disjoint(cover: BoxCover) -> bool:
    boxes = sorted(cover.boxes)
    for i, b in enumerate(boxes):
        for c in boxes[i + 1 :]:
            if c[0] > b[1]:
                break
            if c[2] <= b[3] and b[2] <= c[3]:
                return False
    return True


def explore_pq(p, q, depth: int, cap: Optional[int] = None) -> PQStats:
    """Statistics for E(p^n, q^n) at a finite depth.

    ``verdict`` is ``Cantor`` when a unique-representation certificate applies,
    ``Segment`` when ``p == q >= 1/2``, otherwise ``Open`` with collision counts.
    """
    p, q = as_scalar(p), as_scalar(q)
    spec = PairGenerator(Geometric(ONE, p), Geometric(ONE, q))
    cert = unique_representation_certificate(spec)
    if cert is not None:
        verdict, reason = "Cantor", cert.reason
    elif p == q and p >= ONE / 2:
        verdict, reason = "Segment", "diagonal of a slowly convergent series"
    else:
        verdict, reason = "Open", "no certificate; statistics only"
    cov = cover2d(spec, depth, cap)
    rep = representation_collisions(spec, depth, cap)
    return PQStats(p, q, depth, verdict, reason, len(cov), len(rep.potential), len(rep.exact), _boxes_disjoint(cov))
