"""Upper-half space model of AdS^3 built on the algebra A = <1, tau, j, tau j>.

Relations: tau^2 = 1, j^2 = -1, j tau = -tau j.  Writing k = tau j the full
table is tau j = k, j tau = -k, tau k = j, k tau = -j, j k = tau, k j = -tau,
k^2 = 1.  A is isomorphic to M(2, R); conjugation is the adjugate and so
reverses products.

Points of the model are x1 + x2 tau + x3 j with x3 > 0 and the metric is
(dx1^2 - dx2^2 + dx3^2) / x3^2.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BoundaryHit, LightLikeDisplacement, NonSpacelikeSegment
from .isometry import Isometry
from .split_algebra import SplitComplex, is_lightlike, square_norm

INVERT_TOL = 1e-14
DEFAULT_SAMPLES = 256


# ---------------------------------------------------------------------------
# the algebra A


def mul_A_arrays(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Batched product; last axis holds the four coefficients."""
    x1, x2, x3, x4 = np.moveaxis(np.asarray(x, dtype=float), -1, 0)
    y1, y2, y3, y4 = np.moveaxis(np.asarray(y, dtype=float), -1, 0)
    return np.stack([
        x1 * y1 + x2 * y2 - x3 * y3 + x4 * y4,
        x1 * y2 + x2 * y1 + x3 * y4 - x4 * y3,
        x1 * y3 + x3 * y1 + x2 * y4 - x4 * y2,
        x1 * y4 + x4 * y1 + x2 * y3 - x3 * y2,
    ], axis=-1)


def conj_A_arrays(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x * np.array([1.0, -1.0, -1.0, -1.0])


def norm_A_arrays(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[..., 0] ** 2 - x[..., 1] ** 2 + x[..., 2] ** 2 - x[..., 3] ** 2


@dataclass(frozen=True)
class AlgebraA:
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0
    x4: float = 0.0

    @classmethod
    def from_B(cls, z: SplitComplex) -> "AlgebraA":
        z = SplitComplex.coerce(z)
        return cls(z.re, z.im, 0.0, 0.0)

    @classmethod
    def from_array(cls, a) -> "AlgebraA":
        return cls(*map(float, a))

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3, self.x4])

    def __add__(self, other: "AlgebraA") -> "AlgebraA":
        return AlgebraA.from_array(self.as_array() + other.as_array())

    def __sub__(self, other: "AlgebraA") -> "AlgebraA":
        return AlgebraA.from_array(self.as_array() - other.as_array())

    def __neg__(self) -> "AlgebraA":
        return AlgebraA.from_array(-self.as_array())

    def __mul__(self, other) -> "AlgebraA":
        if isinstance(other, (int, float)):
            return AlgebraA.from_array(other * self.as_array())
        return mul_A(self, other)

    def __rmul__(self, other) -> "AlgebraA":
        if isinstance(other, (int, float)):
            return AlgebraA.from_array(other * self.as_array())
        return NotImplemented

    def conj(self) -> "AlgebraA":
        return conj_A(self)

    def norm(self) -> float:
        """The real number z * conj(z)."""
        return float(norm_A_arrays(self.as_array()))

    def inverse(self) -> "AlgebraA":
        n = self.norm()
        scale = 1.0 + float(np.dot(self.as_array(), self.as_array()))
        if abs(n) <= INVERT_TOL * scale:
            raise BoundaryHit(f"{self!r} is not invertible in A")
        return AlgebraA.from_array(conj_A_arrays(self.as_array()) / n)


ONE_A = AlgebraA(1.0)
TAU_A = AlgebraA(0.0, 1.0)
J_A = AlgebraA(0.0, 0.0, 1.0)
K_A = AlgebraA(0.0, 0.0, 0.0, 1.0)


def mul_A(u: AlgebraA, v: AlgebraA) -> AlgebraA:
    return AlgebraA.from_array(mul_A_arrays(u.as_array(), v.as_array()))


def conj_A(z: AlgebraA) -> AlgebraA:
    return AlgebraA(z.x1, -z.x2, -z.x3, -z.x4)


# ---------------------------------------------------------------------------
# points and the Möbius action


@dataclass(frozen=True)
class ModelPoint:
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        if not self.x3 > 0.0:
            raise ValueError(f"model points need x3 > 0, got {self.x3!r}")

    @classmethod
    def from_A(cls, z: AlgebraA, tol: float = 1e-9) -> "ModelPoint":
        if abs(z.x4) > tol * (1.0 + abs(z.x1) + abs(z.x2) + abs(z.x3)):
            raise ValueError(f"{z!r} has a tau j component and is not in V")
        x3 = z.x3
        if x3 < 0.0:
            x3 = -x3  # the involution I
        return cls(z.x1, z.x2, x3)

    def to_A(self) -> AlgebraA:
        return AlgebraA(self.x1, self.x2, self.x3, 0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def is_close(self, other: "ModelPoint", tol: float = 1e-9) -> bool:
        return bool(np.abs(self.as_array() - other.as_array()).max() <= tol)


def _entries_A(a: Isometry) -> tuple[AlgebraA, AlgebraA, AlgebraA, AlgebraA]:
    return tuple(AlgebraA.from_B(e) for e in a.B_entries())


def mobius_act(a: Isometry, x: ModelPoint) -> ModelPoint:
    """``(a x + b)(c x + d)^-1`` computed in A, folded back to x3 > 0."""
    ea, eb, ec, ed = _entries_A(a)
    xa = x.to_A()
    den = (ec * xa + ed).inverse()
    return ModelPoint.from_A((ea * xa + eb) * den)


def differential(a: Isometry, x: ModelPoint, u) -> np.ndarray:
    """Derivative of the Möbius map at ``x`` applied to ``u`` in V.

    Differentiating ``(a x + b)(c x + d)^-1`` gives
    ``(a - f(x) c) u (c x + d)^-1``; the result is folded by I together
    with the point when the formula lands on x3 < 0.
    """
    ea, eb, ec, ed = _entries_A(a)
    xa = x.to_A()
    den = (ec * xa + ed).inverse()
    fx = (ea * xa + eb) * den
    uu = AlgebraA(*np.asarray(u, dtype=float)[:3], 0.0)
    du = (ea - fx * ec) * uu * den
    out = du.as_array()[:3]
    if fx.x3 < 0.0:
        out = out * np.array([1.0, 1.0, -1.0])
    return out


def metric(x: ModelPoint, u, v=None) -> float:
    u = np.asarray(u, dtype=float)
    v = u if v is None else np.asarray(v, dtype=float)
    return float((u[0] * v[0] - u[1] * v[1] + u[2] * v[2]) / x.x3 ** 2)


def act_samples(a: Isometry, samples: np.ndarray) -> np.ndarray:
    """Apply ``a`` to rows ``(x1, x2, x3)``; batched form of ``mobius_act``."""
    rows = np.asarray(samples, dtype=float).reshape(-1, 3)
    xa = np.column_stack([rows, np.zeros(len(rows))])
    ea, eb, ec, ed = (e.as_array() for e in _entries_A(a))
    num = mul_A_arrays(ea, xa) + eb
    den = mul_A_arrays(ec, xa) + ed
    n = norm_A_arrays(den)
    scale = 1.0 + np.einsum("ij,ij->i", den, den)
    if np.any(np.abs(n) <= INVERT_TOL * scale):
        raise BoundaryHit("a sample is sent to the boundary")
    out = mul_A_arrays(num, conj_A_arrays(den) / n[:, None])
    if np.any(np.abs(out[:, 3]) > 1e-9 * (1.0 + np.abs(out[:, :3]).sum(axis=1))):
        raise ValueError("image has a tau j component and is not in V")
    res = out[:, :3].copy()
    res[:, 2] = np.abs(res[:, 2])  # the involution I
    if np.any(res[:, 2] == 0.0):
        raise ValueError("image left the half-space")
    return res


# ---------------------------------------------------------------------------
# geodesics


def _b(z) -> SplitComplex:
    return SplitComplex.coerce(z)


@dataclass(frozen=True)
class SpaceLikeGeodesic:
    """Conic ``|gamma - p|^2 = |delta|^2`` in ``p + span{delta, j}``.

    An ellipse meeting the boundary at ``p +- delta`` when delta is
    space-like, a two-branch hyperbola when delta is time-like.
    """

    p: SplitComplex
    delta: SplitComplex

    @property
    def is_ellipse(self) -> bool:
        return square_norm(self.delta) > 0.0

    def endpoints(self) -> tuple[SplitComplex, SplitComplex]:
        return self.p + self.delta, self.p - self.delta

    def residual(self, pts: np.ndarray) -> np.ndarray:
        """``|gamma - p|^2 - |delta|^2`` at sample rows ``(x1, x2, x3)``."""
        d1 = pts[:, 0] - self.p.re
        d2 = pts[:, 1] - self.p.im
        return d1 * d1 - d2 * d2 + pts[:, 2] ** 2 - square_norm(self.delta)

    def sample(self, n: int = DEFAULT_SAMPLES, t_max: float = 4.0,
               endpoints: bool = False) -> np.ndarray:
        """Rows ``(t, x1, x2, x3)``.

        Ellipse: t is the angle in (0, pi), from p + delta to p - delta.
        Hyperbola: t in [-t_max, t_max]; t > 0 is the branch through
        p + delta and t < 0 the branch through p - delta, both with
        x3 = sqrt(-|delta|^2) sinh|t|.
        """
        n = int(n)
        d = self.delta
        nn = square_norm(d)
        if self.is_ellipse:
            r = math.sqrt(nn)
            t = np.linspace(0.0, math.pi, n + (0 if endpoints else 2))
            if not endpoints:
                t = t[1:-1]
            alpha, beta = np.cos(t), r * np.sin(t)
        else:
            s = math.sqrt(-nn)
            t = np.linspace(-t_max, t_max, n)
            alpha = np.sign(t) * np.cosh(t)
            alpha[t == 0.0] = 1.0
            beta = s * np.sinh(np.abs(t))
            if not endpoints:
                keep = beta > 0.0
                t, alpha, beta = t[keep], alpha[keep], beta[keep]
        x1 = self.p.re + alpha * d.re
        x2 = self.p.im + alpha * d.im
        return np.column_stack([t, x1, x2, beta])


@dataclass(frozen=True)
class TimeLikeGeodesic:
    """``|gamma - p|^2 = -|delta|^2`` with delta time-like; closes after pi.

    Homogeneously ``[p cos t + delta sin t + s j, cos t]`` with
    s = sqrt(-|delta|^2); the parameter is unit speed.
    """

    p: SplitComplex
    delta: SplitComplex

    def point(self, t: float) -> ModelPoint:
        s = math.sqrt(-square_norm(self.delta))
        c = math.cos(t)
        x = self.p + self.delta * (math.sin(t) / c)
        return ModelPoint(x.re, x.im, s / abs(c))

    def residual(self, pts: np.ndarray) -> np.ndarray:
        d1 = pts[:, 0] - self.p.re
        d2 = pts[:, 1] - self.p.im
        return d1 * d1 - d2 * d2 + pts[:, 2] ** 2 + square_norm(self.delta)

    def sample(self, n: int = DEFAULT_SAMPLES, period: float = math.pi) -> np.ndarray:
        """Rows ``(t, x1, x2, x3)`` for t in [0, period]; t = pi/2 is at infinity."""
        t = np.linspace(0.0, period, int(n))
        t = t[np.abs(np.cos(t)) > 1e-12]
        s = math.sqrt(-square_norm(self.delta))
        c = np.cos(t)
        tan = np.sin(t) / c
        return np.column_stack([t, self.p.re + tan * self.delta.re,
                                self.p.im + tan * self.delta.im, s / np.abs(c)])


@dataclass(frozen=True)
class LightLikeGeodesic:
    """``gamma(t) = p + v / t`` with v a light-like vector of V."""

    p: SplitComplex
    v: tuple[float, float, float]

    def point(self, t: float) -> ModelPoint:
        return ModelPoint(self.p.re + self.v[0] / t, self.p.im + self.v[1] / t, self.v[2] / t)

    def sample(self, n: int = DEFAULT_SAMPLES, t_min: float = 0.1, t_max: float = 100.0) -> np.ndarray:
        t = np.geomspace(t_min, t_max, int(n))
        v = self.v
        return np.column_stack([t, self.p.re + v[0] / t, self.p.im + v[1] / t, v[2] / t])


Geodesic = SpaceLikeGeodesic | TimeLikeGeodesic | LightLikeGeodesic


def geodesic_between(p1, p2) -> SpaceLikeGeodesic:
    """The space-like geodesic with boundary endpoints ``p1`` and ``p2`` in B."""
    p1, p2 = _b(p1), _b(p2)
    delta = (p1 - p2) * 0.5
    if is_lightlike(delta):
        raise LightLikeDisplacement(f"endpoints {p1!r}, {p2!r} differ by a light-like vector")
    return SpaceLikeGeodesic((p1 + p2) * 0.5, delta)


def geodesic_timelike(p, delta) -> TimeLikeGeodesic:
    p, delta = _b(p), _b(delta)
    if not square_norm(delta) < 0.0 or is_lightlike(delta):
        raise ValueError(f"time-like geodesics need |delta|^2 < 0, got {square_norm(delta)!r}")
    return TimeLikeGeodesic(p, delta)


def geodesic_lightlike(p, v) -> LightLikeGeodesic:
    p = _b(p)
    v = tuple(float(c) for c in v)
    if len(v) != 3 or not any(v):
        raise ValueError("light-like direction must be a nonzero vector of V")
    q = v[0] ** 2 - v[1] ** 2 + v[2] ** 2
    if abs(q) > 1e-10 * (1.0 + sum(c * c for c in v)):
        raise ValueError(f"direction {v} is not light-like (|v|^2 = {q!r})")
    if v[2] <= 0.0:
        raise ValueError("light-like direction must point into x3 > 0")
    return LightLikeGeodesic(p, v)


# ---------------------------------------------------------------------------
# length quadrature


def curve_length(samples, tol: float = 0.0) -> float:
    """Metric length of a polyline of model points by midpoint quadrature.

    Accepts ``ModelPoint`` objects or rows ``(x1, x2, x3)``.  Raises
    ``NonSpacelikeSegment`` when some step has normalized ds^2 <= tol.
    """
    if len(samples) == 0:
        return 0.0
    if isinstance(samples[0], ModelPoint):
        arr = np.array([s.as_array() for s in samples])
    else:
        arr = np.asarray(samples, dtype=float).reshape(-1, 3)
    if arr.shape[0] < 2:
        return 0.0
    total, worst = _kernels.curve_length(arr[:, 0], arr[:, 1], arr[:, 2])
    if worst <= tol:
        raise NonSpacelikeSegment(f"segment with normalized ds^2 = {worst:.3g} is not space-like")
    return float(total)


def axis_samples(x: ModelPoint, a: Isometry, n: int = 4096) -> np.ndarray:
    """Samples of the diagonal axis segment ``e^t j`` from x to ``a x``.

    Only meaningful for a diagonal loxodromic ``a`` and ``x`` on its axis.
    """
    y = mobius_act(a, x)
    t = np.linspace(math.log(x.x3), math.log(y.x3), n)
    return np.column_stack([np.zeros_like(t), np.zeros_like(t), np.exp(t)])


# ---------------------------------------------------------------------------
# emission


def samples_to_csv(rows: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x1", "x2", "x3"])
    for row in np.asarray(rows, dtype=float):
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def samples_to_json(rows: np.ndarray) -> str:
    data = [[float(v) for v in row] for row in np.asarray(rows, dtype=float)]
    return json.dumps(data)
