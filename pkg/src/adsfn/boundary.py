"""The boundary PB^1 = RP^1 x RP^1, space-like position, cross ratio, sawteeth."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InfiniteCrossRatio, NotSpacelike
from .split_algebra import SplitComplex, idempotent_join, idempotent_split

PROJECTIVE_TOL = 1e-9


def _normalize(x: float, y: float) -> tuple[float, float]:
    # scale by a power of two so that coordinate ratios stay exact
    m = max(abs(x), abs(y))
    if not m > 0.0 or not math.isfinite(m):
        raise ValueError(f"degenerate homogeneous pair ({x}, {y})")
    e = math.frexp(m)[1]
    x, y = math.ldexp(x, -e), math.ldexp(y, -e)
    if y < 0.0 or (y == 0.0 and x < 0.0):
        x, y = -x, -y
    return x + 0.0, y + 0.0


def projective_distance(u, v) -> float:
    """Angular distance on R/pi Z between two homogeneous pairs."""
    cross = abs(u[0] * v[1] - u[1] * v[0])
    dot = abs(u[0] * v[0] + u[1] * v[1])
    return math.atan2(cross, dot)


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """A point of PB^1 in factor coordinates ``([x+ : y+], [x- : y-])``."""

    plus: tuple[float, float]
    minus: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "plus", _normalize(*map(float, self.plus)))
        object.__setattr__(self, "minus", _normalize(*map(float, self.minus)))

    def factor_distances(self, other: "BoundaryPoint") -> tuple[float, float]:
        return (projective_distance(self.plus, other.plus),
                projective_distance(self.minus, other.minus))

    def distance(self, other: "BoundaryPoint") -> float:
        return max(self.factor_distances(other))

    def __eq__(self, other):
        if not isinstance(other, BoundaryPoint):
            return NotImplemented
        return self.distance(other) <= PROJECTIVE_TOL

    __hash__ = None

    def affine(self) -> tuple[float, float]:
        """Affine coordinates x/y of each factor (``inf`` at [1:0])."""
        return tuple(p[0] / p[1] if p[1] != 0.0 else math.inf
                     for p in (self.plus, self.minus))

    def angles(self) -> tuple[float, float]:
        """Each factor as an angle in [0, pi)."""
        return tuple(math.atan2(p[1], p[0]) % math.pi for p in (self.plus, self.minus))

    def to_B(self) -> SplitComplex:
        if self.plus[1] == 0.0 or self.minus[1] == 0.0:
            raise ValueError(f"{self!r} is not in the affine chart B")
        a, b = self.affine()
        return idempotent_join(a, b)

    def to_json(self) -> dict:
        return {"plus": list(self.plus), "minus": list(self.minus)}

    @classmethod
    def from_json(cls, data) -> "BoundaryPoint":
        return cls(tuple(data["plus"]), tuple(data["minus"]))

    def __repr__(self) -> str:
        fmt = lambda p: f"[{p[0]:.6g}:{p[1]:.6g}]"
        return f"BoundaryPoint({fmt(self.plus)}, {fmt(self.minus)})"


def from_B(z: SplitComplex) -> BoundaryPoint:
    p, q = idempotent_split(z)
    return BoundaryPoint((p, 1.0), (q, 1.0))


def from_pair(x: SplitComplex, y: SplitComplex) -> BoundaryPoint:
    """The class of the homogeneous B-pair ``[x, y]``."""
    xp, xq = idempotent_split(x)
    yp, yq = idempotent_split(y)
    return BoundaryPoint((xp, yp), (xq, yq))


def point_at_infinity() -> BoundaryPoint:
    return BoundaryPoint((1.0, 0.0), (1.0, 0.0))


def spacelike_position(p: BoundaryPoint, q: BoundaryPoint, tol: float = PROJECTIVE_TOL) -> bool:
    """True when the two points differ in both factors."""
    dp, dm = p.factor_distances(q)
    return dp > tol and dm > tol


def _factor_cross_ratio(a, b, c, d) -> float:
    num = (b[0] * a[1] - a[0] * b[1]) * (d[0] * c[1] - c[0] * d[1])
    den = (a[0] * d[1] - d[0] * a[1]) * (b[0] * c[1] - c[0] * b[1])
    if den == 0.0:
        raise InfiniteCrossRatio("factor cross ratio has a vanishing denominator")
    value = num / den
    if not math.isfinite(value):
        raise InfiniteCrossRatio("factor cross ratio overflowed")
    return value


def cross_ratio(p1: BoundaryPoint, p2: BoundaryPoint, p3: BoundaryPoint,
                p4: BoundaryPoint, tol: float = PROJECTIVE_TOL) -> SplitComplex:
    """Cross ratio normalized by cr([1,0], [-1,1], [0,1], [z,1]) = z.

    ``tol`` is the angular separation demanded of every pair; pass 0 to
    accept any pair of distinct points (large twists push points within
    round-off of one another in angle while keeping full relative
    precision in homogeneous coordinates).
    """
    pts = (p1, p2, p3, p4)
    for i in range(4):
        for j in range(i + 1, 4):
            if not spacelike_position(pts[i], pts[j], tol):
                raise NotSpacelike(f"points {i + 1} and {j + 1} are not in space-like position")
    return idempotent_join(*factor_cross_ratios(*pts))


def factor_cross_ratios(p1: BoundaryPoint, p2: BoundaryPoint, p3: BoundaryPoint,
                        p4: BoundaryPoint) -> tuple[float, float]:
    """The two real cross ratios, without the space-like check.

    Kept separate so callers can take logarithms per factor; joining a
    huge and a tiny factor into (re, im) would lose the tiny one.
    """
    pts = (p1, p2, p3, p4)
    return (_factor_cross_ratio(*(p.plus for p in pts)),
            _factor_cross_ratio(*(p.minus for p in pts)))


def real_cross_ratio(a: float, b: float, c: float, d: float) -> float:
    """Classical cross ratio of four affine reals, same convention."""
    hom = [(x, 1.0) if math.isfinite(x) else (1.0, 0.0) for x in (a, b, c, d)]
    return _factor_cross_ratio(*hom)


class Orientation(enum.IntEnum):
    FutureDirected = 1
    PastDirected = -1


@dataclass(frozen=True)
class Sawtooth:
    """Two consecutive light-like segments left -> vertex -> right."""

    left: BoundaryPoint
    vertex: BoundaryPoint
    right: BoundaryPoint
    orientation: Orientation

    def __post_init__(self):
        if spacelike_position(self.left, self.vertex) or spacelike_position(self.vertex, self.right):
            raise ValueError("sawtooth edges must be light-like")
        if not spacelike_position(self.left, self.right):
            raise NotSpacelike("sawtooth endpoints must be in space-like position")


def sawtooth(attracting: BoundaryPoint, repelling: BoundaryPoint,
             orientation: Orientation | int) -> Sawtooth:
    """Sawtooth joining the axis endpoints of a loxodromic element.

    With the axis normalized to attracting [1,0] and repelling [0,1], the
    future-directed vertex is [e+, e-]; the past-directed one is [e-, e+].
    """
    orientation = Orientation(int(orientation))
    if orientation is Orientation.FutureDirected:
        vertex = BoundaryPoint(attracting.plus, repelling.minus)
    else:
        vertex = BoundaryPoint(repelling.plus, attracting.minus)
    return Sawtooth(attracting, vertex, repelling, orientation)


def as_array(points) -> np.ndarray:
    """Stack points into an ``(n, 2, 2)`` array ``[point, factor, coord]``."""
    return np.array([[p.plus, p.minus] for p in points], dtype=float).reshape(-1, 2, 2)
