"""Admissible representations of the pants group <r, s, t | t s r = e>."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryPoint
from .errors import ConeViolation, NotLoxodromic
from .isometry import (Isometry, IsometryClass, b_length, classify, fixed_points,
                       three_point_map)
from .split_algebra import ConeClass, SplitComplex, cone_classify, idempotent_split

GENERATORS = ("r", "s", "t")
_NEXT = {"r": "s", "s": "t", "t": "r"}
_PREV = {"r": "t", "s": "r", "t": "s"}

ZERO_LENGTH_TOL = 1e-12


def next_gen(g: str) -> str:
    return _NEXT[g]


def prev_gen(g: str) -> str:
    return _PREV[g]


def slot_name(slot) -> str:
    if isinstance(slot, str) and slot in _NEXT:
        return slot
    if isinstance(slot, (int, np.integer)) and 0 <= int(slot) < 3:
        return GENERATORS[int(slot)]
    raise ValueError(f"unknown pants slot {slot!r}")


@dataclass(frozen=True)
class PantsRep:
    r: Isometry
    s: Isometry
    t: Isometry

    def __getitem__(self, gen) -> Isometry:
        return getattr(self, slot_name(gen))

    def conjugate_by(self, c: Isometry) -> "PantsRep":
        return PantsRep(*(g.conjugate_by(c) for g in (self.r, self.s, self.t)))

    def relation_residual(self) -> float:
        """Distance of t s r from +-identity, worst over both factors."""
        prod = self.t @ self.s @ self.r
        res = 0.0
        for m in (prod.plus, prod.minus):
            res = max(res, min(np.abs(m - np.eye(2)).max(), np.abs(m + np.eye(2)).max()))
        return float(res)

    def is_close(self, other: "PantsRep", tol: float = 1e-9) -> bool:
        return all(self[g].is_close(other[g], tol) for g in GENERATORS)

    def to_json(self) -> dict:
        return {g: self[g].to_json() for g in GENERATORS}

    @classmethod
    def from_json(cls, data) -> "PantsRep":
        return cls(*(Isometry.from_json(data[g]) for g in GENERATORS))


def _factor_pants(a: float, b: float, c: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Real pants with boundary lengths (a, b, c), all traces negative.

    R = -diag(e^{a/2}, e^{-a/2}) (or -[[1,-1],[0,1]] when a = 0), S has its
    repelling fixed point at -1, and T = (S R)^-1.
    """
    y = -2.0 * math.cosh(b / 2.0)
    z = -2.0 * math.cosh(c / 2.0)
    # repelling eigenvalue of S: the root of k^2 - y k + 1 with smaller modulus
    kappa = -math.exp(-b / 2.0)
    if a <= ZERO_LENGTH_TOL:
        R = -np.array([[1.0, -1.0], [0.0, 1.0]])
        # tr(S R) = -(p - w + s) = z
        w = y + z
        s = w + kappa
        p = y - s
    else:
        r1 = math.exp(a / 2.0)
        R = -np.diag([r1, 1.0 / r1])
        # tr(S R) = -(p r1 + s / r1) = z together with p + s = y
        p = (-z - y / r1) / (r1 - 1.0 / r1)
        s = y - p
        w = s - kappa
    q = p - kappa
    S = np.array([[p, q], [w, s]])
    SR = S @ R
    T = np.array([[SR[1, 1], -SR[0, 1]], [-SR[1, 0], SR[0, 0]]])
    return R, S, T


def _check_length(l: SplitComplex, name: str) -> tuple[float, float]:
    l = SplitComplex.coerce(l)
    if cone_classify(l) is ConeClass.Outside:
        raise ConeViolation(f"{name} = {l!r} lies outside the closed cone C+")
    lp, lm = idempotent_split(l)
    return max(lp, 0.0), max(lm, 0.0)


def realize_pants(l1, l2, l3) -> PantsRep:
    """Pants representation with B-lengths (l1, l2, l3) for (r, s, t).

    r has attracting point [1,0] and repelling point [0,1]; s has its
    repelling point at [-1,1].  A zero idempotent coordinate gives a
    parabolic factor.
    """
    (ap, am), (bp, bm), (cp, cm) = (_check_length(l, n) for l, n in
                                    ((l1, "l1"), (l2, "l2"), (l3, "l3")))
    Rp, Sp, Tp = _factor_pants(ap, bp, cp)
    Rm, Sm, Tm = _factor_pants(am, bm, cm)
    return PantsRep(Isometry(Rp, Rm), Isometry(Sp, Sm), Isometry(Tp, Tm))


def b_lengths(rep: PantsRep) -> tuple[SplitComplex, SplitComplex, SplitComplex]:
    return tuple(b_length(rep[g]) for g in GENERATORS)


def normalizer(rep_gens, gen: str) -> Isometry:
    """Isometry sending gen's attracting/repelling points to [1,0]/[0,1]
    and the repelling point of the next generator to [-1,1].

    ``rep_gens`` is anything indexable by generator name.
    """
    g = rep_gens[gen]
    if classify(g) is not IsometryClass.Loxodromic:
        raise NotLoxodromic(f"generator {gen} is not loxodromic")
    fp = fixed_points(g)
    nxt = fixed_points(rep_gens[next_gen(gen)]).repelling
    target = (BoundaryPoint((1.0, 0.0), (1.0, 0.0)), BoundaryPoint((0.0, 1.0), (0.0, 1.0)),
              BoundaryPoint((-1.0, 1.0), (-1.0, 1.0)))
    return three_point_map((fp.attracting, fp.repelling, nxt), target)


def normalize_rep(rep: PantsRep, gen) -> tuple[PantsRep, Isometry]:
    gen = slot_name(gen)
    c = normalizer(rep, gen)
    return rep.conjugate_by(c), c
