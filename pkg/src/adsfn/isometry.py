"""PSL(2,B) as pairs of PSL(2,R) matrices: action, classification, B-length."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .boundary import BoundaryPoint
from .errors import NotAdmissible, NotLoxodromic
from .split_algebra import SplitComplex, arccosh_b, idempotent_join, idempotent_split

PARABOLIC_TOL = 1e-8
DET_TOL = 1e-12


def _as_sl2(m) -> np.ndarray:
    m = np.array(m, dtype=float).reshape(2, 2)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if not det > 0.0 or not math.isfinite(det):
        raise ValueError(f"matrix has non-positive determinant {det!r}")
    if abs(det - 1.0) > DET_TOL:
        m = m / math.sqrt(det)
    m.setflags(write=False)
    return m


def _proj_close(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    scale = 1.0 + max(np.abs(a).max(), np.abs(b).max())
    return min(np.abs(a - b).max(), np.abs(a + b).max()) <= tol * scale


@dataclass(frozen=True, eq=False)
class Isometry:
    """An element of PSL(2,B) stored as ``plus e+ + minus e-``."""

    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "plus", _as_sl2(self.plus))
        object.__setattr__(self, "minus", _as_sl2(self.minus))

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(2), np.eye(2))

    @classmethod
    def from_B_entries(cls, a, b, c, d) -> "Isometry":
        ent = [idempotent_split(SplitComplex.coerce(v)) for v in (a, b, c, d)]
        plus = [[ent[0][0], ent[1][0]], [ent[2][0], ent[3][0]]]
        minus = [[ent[0][1], ent[1][1]], [ent[2][1], ent[3][1]]]
        return cls(plus, minus)

    def B_entries(self) -> tuple[SplitComplex, SplitComplex, SplitComplex, SplitComplex]:
        return tuple(idempotent_join(self.plus[i, j], self.minus[i, j])
                     for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if not isinstance(other, Isometry):
            return NotImplemented
        return Isometry(self.plus @ other.plus, self.minus @ other.minus)

    compose = __matmul__

    def inverse(self) -> "Isometry":
        adj = lambda m: np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
        return Isometry(adj(self.plus), adj(self.minus))

    def __pow__(self, k: int) -> "Isometry":
        k = int(k)
        base = self if k >= 0 else self.inverse()
        p = np.linalg.matrix_power(base.plus, abs(k))
        m = np.linalg.matrix_power(base.minus, abs(k))
        return Isometry(p, m)

    def conjugate_by(self, c: "Isometry") -> "Isometry":
        """``c self c^-1``."""
        return c @ self @ c.inverse()

    def trace(self) -> SplitComplex:
        return idempotent_join(np.trace(self.plus), np.trace(self.minus))

    def is_close(self, other: "Isometry", tol: float = 1e-9) -> bool:
        return _proj_close(self.plus, other.plus, tol) and _proj_close(self.minus, other.minus, tol)

    def is_identity(self, tol: float = 1e-9) -> bool:
        return self.is_close(Isometry.identity(), tol)

    def as_array(self) -> np.ndarray:
        return np.stack([self.plus, self.minus])

    def to_json(self) -> dict:
        return {"plus": self.plus.tolist(), "minus": self.minus.tolist()}

    @classmethod
    def from_json(cls, data) -> "Isometry":
        return cls(data["plus"], data["minus"])

    def __repr__(self) -> str:
        return f"Isometry(plus={self.plus.tolist()}, minus={self.minus.tolist()})"


class IsometryClass(enum.Enum):
    Loxodromic = "loxodromic"
    SemiLoxodromicPlus = "semi-loxodromic+"
    SemiLoxodromicMinus = "semi-loxodromic-"
    Parabolic = "parabolic"
    Other = "other"


ADMISSIBLE = frozenset({IsometryClass.Loxodromic, IsometryClass.SemiLoxodromicPlus,
                        IsometryClass.SemiLoxodromicMinus, IsometryClass.Parabolic})


def factor_type(m: np.ndarray, tol: float = PARABOLIC_TOL) -> str:
    t = abs(m[0, 0] + m[1, 1])
    if abs(t - 2.0) <= tol:
        s = 1.0 if m[0, 0] + m[1, 1] >= 0 else -1.0
        if np.abs(m - s * np.eye(2)).max() <= tol:
            return "identity"
        return "parabolic"
    return "hyperbolic" if t > 2.0 else "elliptic"


def classify(a: Isometry, tol: float = PARABOLIC_TOL) -> IsometryClass:
    kp, km = factor_type(a.plus, tol), factor_type(a.minus, tol)
    if kp == "hyperbolic" and km == "hyperbolic":
        return IsometryClass.Loxodromic
    if kp == "hyperbolic" and km == "parabolic":
        return IsometryClass.SemiLoxodromicPlus
    if kp == "parabolic" and km == "hyperbolic":
        return IsometryClass.SemiLoxodromicMinus
    if kp == "parabolic" and km == "parabolic":
        return IsometryClass.Parabolic
    return IsometryClass.Other


def _require_admissible(a: Isometry, tol: float) -> IsometryClass:
    cls = classify(a, tol)
    if cls not in ADMISSIBLE:
        raise NotAdmissible(f"isometry of class {cls.value} has no B-length")
    return cls


def factor_length(m: np.ndarray, tol: float = PARABOLIC_TOL) -> float:
    """Hyperbolic translation length ``2 arccosh(|tr|/2)``; 0 for parabolics."""
    t = abs(m[0, 0] + m[1, 1])
    if abs(t - 2.0) <= tol:
        return 0.0
    return 2.0 * math.acosh(t / 2.0)


def b_length(a: Isometry, tol: float = PARABOLIC_TOL) -> SplitComplex:
    """``2 arccosh(tr/2)`` evaluated with the positive-trace lift in each factor."""
    _require_admissible(a, tol)
    return idempotent_join(factor_length(a.plus, tol), factor_length(a.minus, tol))


def b_length_via_arccosh(a: Isometry, tol: float = PARABOLIC_TOL) -> SplitComplex:
    """Same quantity through the B-valued arccosh of half the (lifted) trace."""
    _require_admissible(a, tol)
    half = idempotent_join(abs(np.trace(a.plus)) / 2.0, abs(np.trace(a.minus)) / 2.0)
    p, q = idempotent_split(half)
    # parabolic factors are pinned to trace 2 exactly
    if abs(2 * p - 2.0) <= tol:
        p = 1.0
    if abs(2 * q - 2.0) <= tol:
        q = 1.0
    return 2.0 * arccosh_b(idempotent_join(p, q))


def translation_rotation(a: Isometry, tol: float = PARABOLIC_TOL) -> tuple[float, float]:
    """Translation along the axis and hyperbolic rotation angle around it."""
    if classify(a, tol) is not IsometryClass.Loxodromic:
        raise NotLoxodromic("translation/rotation is defined for loxodromic elements only")
    ell = b_length(a, tol)
    return ell.re, ell.im


class FixedPoints(NamedTuple):
    attracting: BoundaryPoint
    repelling: BoundaryPoint
    auxiliary: tuple[BoundaryPoint, ...]


def factor_fixed_points(m: np.ndarray, tol: float = PARABOLIC_TOL):
    att, rep, kind = _kernels.fixed_points(m.reshape(1, 2, 2), tol)
    return tuple(att[0]), tuple(rep[0]), int(kind[0])


def fixed_points(a: Isometry, tol: float = PARABOLIC_TOL) -> FixedPoints:
    cls = classify(a, tol)
    if cls not in ADMISSIBLE:
        raise NotAdmissible(f"isometry of class {cls.value}")
    ap, rp, _ = factor_fixed_points(a.plus, tol)
    am, rm, _ = factor_fixed_points(a.minus, tol)
    attracting = BoundaryPoint(ap, am)
    repelling = BoundaryPoint(rp, rm)
    aux: tuple[BoundaryPoint, ...] = ()
    if cls is IsometryClass.Loxodromic:
        aux = (BoundaryPoint(ap, rm), BoundaryPoint(rp, am))
    return FixedPoints(attracting, repelling, aux)


def act(a: Isometry, p: BoundaryPoint) -> BoundaryPoint:
    x = a.plus @ np.asarray(p.plus)
    y = a.minus @ np.asarray(p.minus)
    return BoundaryPoint(tuple(x), tuple(y))


def centralizer_element(tw: SplitComplex) -> Isometry:
    """Diagonal element with e+ exponent Re+Im and e- exponent Re-Im."""
    tw = SplitComplex.coerce(tw)
    lam, mu = idempotent_split(tw)
    return diagonal(lam, mu)


def diagonal(lam: float, mu: float) -> Isometry:
    return Isometry(np.diag([math.exp(lam / 2), math.exp(-lam / 2)]),
                    np.diag([math.exp(mu / 2), math.exp(-mu / 2)]))


def semi_loxodromic(lam: float, b: float, sign: int = +1) -> Isometry:
    hyp = np.diag([math.exp(lam / 2), math.exp(-lam / 2)])
    par = np.array([[1.0, b], [0.0, 1.0]])
    return Isometry(hyp, par) if sign > 0 else Isometry(par, hyp)


def parabolic(a: float, b: float) -> Isometry:
    return Isometry([[1.0, a], [0.0, 1.0]], [[1.0, b], [0.0, 1.0]])


# ---------------------------------------------------------------------------
# real Möbius normalization (three-point transitivity, one factor at a time)


def _hom_det(p, q) -> float:
    return p[0] * q[1] - p[1] * q[0]


def _to_zero_inf_one(u1, u2, u3) -> np.ndarray:
    k1 = _hom_det(u3, u2)
    k2 = _hom_det(u3, u1)
    return np.array([[k1 * u1[1], -k1 * u1[0]], [k2 * u2[1], -k2 * u2[0]]])


def factor_three_point_map(src, dst) -> np.ndarray:
    """The SL(2,R) matrix sending homogeneous ``src[i]`` to ``dst[i]``.

    Raises ``NotAdmissible`` when the unique projective solution reverses
    orientation (the two triples have opposite cyclic order).
    """
    mu = _to_zero_inf_one(*src)
    mv = _to_zero_inf_one(*dst)
    du, dv = np.linalg.det(mu), np.linalg.det(mv)
    if not du * dv > 0.0:
        raise NotAdmissible("three-point normalization would reverse orientation")
    adj = np.array([[mv[1, 1], -mv[0, 1]], [-mv[1, 0], mv[0, 0]]])
    m = adj @ mu
    return m / math.sqrt(np.linalg.det(m))


def three_point_map(src: tuple[BoundaryPoint, BoundaryPoint, BoundaryPoint],
                    dst: tuple[BoundaryPoint, BoundaryPoint, BoundaryPoint]) -> Isometry:
    plus = factor_three_point_map([p.plus for p in src], [p.plus for p in dst])
    minus = factor_three_point_map([p.minus for p in src], [p.minus for p in dst])
    return Isometry(plus, minus)


# ---------------------------------------------------------------------------
# random elements (test data, CLI fixtures)


def random_sl2(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    while True:
        m = np.eye(2) + scale * rng.normal(size=(2, 2))
        det = np.linalg.det(m)
        if det > 0.05:
            return m / math.sqrt(det)


def random_isometry(rng: np.random.Generator, scale: float = 1.0) -> Isometry:
    return Isometry(random_sl2(rng, scale), random_sl2(rng, scale))
