"""Arithmetic in the split-complex algebra B = R + tau R, tau**2 = 1.

Every element is stored by its coefficients ``re + tau * im``.  The
idempotents ``e+ = (1 + tau)/2`` and ``e- = (1 - tau)/2`` split B into
R x R, and all transcendental functions are evaluated through that
splitting, one real function call per factor.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, LightLikeElement

LIGHTLIKE_TOL = 1e-10


def lightlike_threshold(re: float, im: float) -> float:
    return LIGHTLIKE_TOL * (1.0 + re * re + im * im)


@dataclass(frozen=True, slots=True)
class SplitComplex:
    re: float = 0.0
    im: float = 0.0

    # -- construction -------------------------------------------------
    @classmethod
    def coerce(cls, value) -> "SplitComplex":
        if isinstance(value, SplitComplex):
            return value
        if isinstance(value, (int, float, np.floating, np.integer)):
            return cls(float(value), 0.0)
        raise TypeError(f"cannot interpret {value!r} as a split-complex number")

    @classmethod
    def from_idempotent(cls, p: float, q: float) -> "SplitComplex":
        return idempotent_join(p, q)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            o = SplitComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return SplitComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = SplitComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return SplitComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = SplitComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __neg__(self):
        return SplitComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        try:
            o = SplitComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = SplitComplex.coerce(other)
        except TypeError:
            return NotImplemented
        if o.im == 0.0:
            return SplitComplex(self.re / o.re, self.im / o.re)
        return mul(self, invert(o))

    def __rtruediv__(self, other):
        try:
            o = SplitComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return mul(o, invert(self))

    def conj(self) -> "SplitComplex":
        return SplitComplex(self.re, -self.im)

    @property
    def square_norm(self) -> float:
        return square_norm(self)

    def split(self) -> tuple[float, float]:
        return idempotent_split(self)

    def is_close(self, other, tol: float = 1e-12) -> bool:
        o = SplitComplex.coerce(other)
        return abs(self.re - o.re) <= tol and abs(self.im - o.im) <= tol

    def to_json(self) -> dict:
        return {"re": float(self.re), "im": float(self.im)}

    @classmethod
    def from_json(cls, data) -> "SplitComplex":
        if isinstance(data, (int, float)):
            return cls(float(data), 0.0)
        return cls(float(data["re"]), float(data["im"]))

    def __repr__(self) -> str:
        sign = "+" if self.im >= 0 or math.isnan(self.im) else "-"
        return f"({self.re!r} {sign} {abs(self.im)!r}τ)"


ZERO = SplitComplex(0.0, 0.0)
ONE = SplitComplex(1.0, 0.0)
TAU = SplitComplex(0.0, 1.0)
E_PLUS = SplitComplex(0.5, 0.5)
E_MINUS = SplitComplex(0.5, -0.5)


def mul(u: SplitComplex, v: SplitComplex) -> SplitComplex:
    return SplitComplex(u.re * v.re + u.im * v.im, u.re * v.im + u.im * v.re)


def square_norm(z: SplitComplex) -> float:
    """``re**2 - im**2``; negative for time-like elements."""
    return z.re * z.re - z.im * z.im


def is_lightlike(z: SplitComplex) -> bool:
    return abs(square_norm(z)) <= lightlike_threshold(z.re, z.im)


def invert(z: SplitComplex) -> SplitComplex:
    n = square_norm(z)
    if abs(n) <= lightlike_threshold(z.re, z.im):
        raise LightLikeElement(f"{z!r} has square norm {n!r} and is not invertible")
    return SplitComplex(z.re / n, -z.im / n)


def idempotent_split(z: SplitComplex) -> tuple[float, float]:
    """Coordinates ``(p, q)`` with ``z = p e+ + q e-``."""
    return z.re + z.im, z.re - z.im


def idempotent_join(p: float, q: float) -> SplitComplex:
    return SplitComplex(0.5 * (p + q), 0.5 * (p - q))


def apply_componentwise(f: Callable[[float], float], z: SplitComplex,
                        name: str | None = None) -> SplitComplex:
    p, q = idempotent_split(z)
    try:
        fp, fq = f(p), f(q)
    except (ValueError, OverflowError) as exc:
        raise DomainError(f"{name or f.__name__} undefined at {z!r}: {exc}") from exc
    if math.isnan(fp) or math.isnan(fq):
        raise DomainError(f"{name or f.__name__} undefined at {z!r}")
    return idempotent_join(fp, fq)


def exp_b(z: SplitComplex) -> SplitComplex:
    return apply_componentwise(math.exp, z, "exp")


def log_b(z: SplitComplex) -> SplitComplex:
    p, q = idempotent_split(z)
    if not (p > 0.0 and q > 0.0):
        raise DomainError(f"log undefined at {z!r}: idempotent coordinates ({p}, {q})")
    return idempotent_join(math.log(p), math.log(q))


def cosh_b(z: SplitComplex) -> SplitComplex:
    return apply_componentwise(math.cosh, z, "cosh")


def _arccosh_nonneg(x: float) -> float:
    # tolerate round-off just below 1 (parabolic factors)
    if x < 1.0:
        if x > 1.0 - 1e-12:
            return 0.0
        raise ValueError(f"{x} < 1")
    return math.acosh(x)


def arccosh_b(z: SplitComplex) -> SplitComplex:
    """Non-negative branch of arccosh in each factor."""
    return apply_componentwise(_arccosh_nonneg, z, "arccosh")


class ConeClass(enum.Enum):
    InteriorCPlus = "interior"
    BoundaryCPlus = "boundary"
    Outside = "outside"


def cone_classify(z: SplitComplex) -> ConeClass:
    """Position of ``z`` relative to the cone {Re z > 0, |z|**2 > 0}."""
    tol = lightlike_threshold(z.re, z.im)
    n = square_norm(z)
    if z.re == 0.0 and z.im == 0.0:
        return ConeClass.BoundaryCPlus
    if abs(n) <= tol:
        return ConeClass.BoundaryCPlus if z.re >= -tol else ConeClass.Outside
    if n > 0.0 and z.re > 0.0:
        return ConeClass.InteriorCPlus
    return ConeClass.Outside


def in_closed_cone(z: SplitComplex) -> bool:
    return cone_classify(z) is not ConeClass.Outside


# -- array helpers (struct-of-arrays) used by batched checks ------------

def mul_arrays(ur, ui, vr, vi):
    ur, ui, vr, vi = map(np.asarray, (ur, ui, vr, vi))
    return ur * vr + ui * vi, ur * vi + ui * vr


def split_arrays(re, im):
    re, im = np.asarray(re), np.asarray(im)
    return re + im, re - im


def join_arrays(p, q):
    p, q = np.asarray(p), np.asarray(q)
    return 0.5 * (p + q), 0.5 * (p - q)
