"""Augmented coordinates along a multicurve D, pinch paths and limit-set samples."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .boundary import BoundaryPoint
from .decomposition import PantsDecomposition
from .errors import (AxisDegenerate, ConeViolation, InvalidStratumPoint, NotContained,
                     ScheduleInvalid)
from .fn_coords import (FNPoint, SurfaceStructure, _sc, build_structure, check_curve_length,
                        check_peripheral, coords_to_structure, peripheral_delta, sign)
from .gluing import curve_length, extract_twist
from .isometry import act, b_length, fixed_points
from .pants import normalizer, prev_gen
from .split_algebra import (ConeClass, SplitComplex, cone_classify, invert, square_norm)

TWO_PI = 2.0 * math.pi
AXIS_TOL = 1e-300


def theta_renorm(length, twist) -> SplitComplex:
    """2 pi * twist / length; a Dehn twist adds exactly 2 pi."""
    length, twist = _sc(length), _sc(twist)
    return TWO_PI * (twist * invert(length))


def twist_from_theta(length, theta) -> SplitComplex:
    return _sc(theta) * _sc(length) * (1.0 / TWO_PI)


def reduce_twist(length, twist) -> tuple[SplitComplex, int]:
    """Representative with Re(twist) in [0, Re(length)) and the Dehn count removed."""
    length, twist = _sc(length), _sc(twist)
    k = math.floor(twist.re / length.re)
    out = twist - k * length
    if out.re >= length.re:  # round-off at the upper edge
        out, k = out - length, k + 1
    return out, k


def _sech(c: float) -> float:
    e = math.exp(-abs(c))
    return 2.0 * e / (1.0 + e * e)


def H_map(length, angle: float, c: float) -> tuple[float, float, float, float]:
    """(Im l, |l| sech c cos angle, |l| sech c sin angle, |l| tanh c)."""
    length = _sc(length)
    if cone_classify(length) is not ConeClass.InteriorCPlus:
        raise ConeViolation(f"{length!r} is not in the open cone C+")
    n = math.sqrt(square_norm(length))
    rho = n * _sech(c)
    return (length.im, rho * math.cos(angle), rho * math.sin(angle), n * math.tanh(c))


def H_inverse(x: float, y: float, z: float, w: float) -> tuple[SplitComplex, float, float]:
    """Exact inverse of ``H_map``; the angle is returned in [0, 2 pi)."""
    rho = math.hypot(y, z)
    if rho <= AXIS_TOL:
        raise AxisDegenerate("(y, z) = (0, 0) has no angle")
    re = math.sqrt(x * x + y * y + z * z + w * w)
    angle = math.atan2(z, y) % TWO_PI
    return SplitComplex(re, x), angle, math.asinh(w / rho)


# ---------------------------------------------------------------------------
# stratum points


@dataclass(frozen=True)
class StratumPoint:
    """(length, twist) off D, (a, b, c, d) on D, and peripheral (length, delta)."""

    undegenerate: dict[int, tuple[SplitComplex, SplitComplex]]
    degenerate: dict[int, tuple[float, float, float, float]]
    peripherals: tuple[tuple[SplitComplex, float], ...] = ()

    @property
    def pinched(self) -> frozenset[int]:
        return frozenset(i for i, v in self.degenerate.items() if v[1] == 0.0 and v[2] == 0.0)

    def max_difference(self, other: "StratumPoint") -> float:
        if set(self.undegenerate) != set(other.undegenerate) or set(self.degenerate) != set(other.degenerate):
            return math.inf
        worst = 0.0
        for i, (l, t) in self.undegenerate.items():
            lo, to = other.undegenerate[i]
            worst = max(worst, abs(l.re - lo.re), abs(l.im - lo.im), abs(t.re - to.re), abs(t.im - to.im))
        for i, v in self.degenerate.items():
            worst = max([worst] + [abs(p - q) for p, q in zip(v, other.degenerate[i])])
        for (l, d), (lo, do) in zip(self.peripherals, other.peripherals):
            worst = max(worst, abs(l.re - lo.re), abs(l.im - lo.im), abs(d - do))
        return worst

    def is_close(self, other: "StratumPoint", tol: float = 1e-9) -> bool:
        return self.max_difference(other) <= tol

    def to_json(self) -> dict:
        return {
            "undegenerate": [{"curve": i, "length": l.to_json(), "twist": t.to_json()}
                             for i, (l, t) in sorted(self.undegenerate.items())],
            "degenerate": [{"curve": i, "abcd": list(v)} for i, v in sorted(self.degenerate.items())],
            "peripherals": [{"length": l.to_json(), "delta": d} for l, d in self.peripherals],
        }

    @classmethod
    def from_json(cls, data) -> "StratumPoint":
        und = {int(e["curve"]): (_sc(e["length"]), _sc(e["twist"])) for e in data.get("undegenerate", [])}
        deg = {}
        for e in data.get("degenerate", []):
            v = tuple(float(x) for x in e["abcd"])
            if len(v) != 4:
                raise InvalidStratumPoint(f"curve {e['curve']}: need four numbers")
            deg[int(e["curve"])] = v
        per = tuple((_sc(e["length"]), float(e["delta"])) for e in data.get("peripherals", []))
        return cls(und, deg, per)


def _check_multicurve(dec: PantsDecomposition, D) -> frozenset[int]:
    D = frozenset(int(i) for i in D)
    if not D <= set(range(len(dec.curves))):
        raise NotContained(f"multicurve {sorted(D)} is not made of decomposition curves")
    return D


def stratum_coords(dec: PantsDecomposition, D, s: SurfaceStructure) -> StratumPoint:
    D = _check_multicurve(dec, D)
    if not s.degenerate <= D:
        raise NotContained(f"degenerate curves {sorted(s.degenerate)} are not all in D")
    und, deg = {}, {}
    for i in range(len(dec.curves)):
        if i in s.degenerate:
            l = b_length(s.slot_holonomy(dec.curves[i].ends[0]))
            deg[i] = (l.im, 0.0, 0.0, peripheral_delta(l, s.tags.get(("curve", i), 0)))
            continue
        comp, li = s.component_of_curve(i)
        l = curve_length(comp.glued, li)
        tw = extract_twist(comp.glued, li)
        if i in D:
            theta = theta_renorm(l, tw)
            deg[i] = H_map(l, theta.re % TWO_PI, theta.im)
        else:
            und[i] = (l, tw)
    per = []
    for j, slot in enumerate(dec.peripherals):
        l = b_length(s.slot_holonomy(slot))
        per.append((l, peripheral_delta(l, s.tags.get(("peripheral", j), 0))))
    return StratumPoint(und, deg, tuple(per))


def stratum_coords_inverse(dec: PantsDecomposition, D, p: StratumPoint) -> SurfaceStructure:
    """A structure with the given stratum coordinates (twists on D up to Dehn twists)."""
    D = _check_multicurve(dec, D)
    if set(p.degenerate) != D or set(p.undegenerate) != set(range(len(dec.curves))) - D:
        raise NotContained("stratum point does not match the multicurve")
    lengths, twists, cut = {}, {}, {}
    for i, (l, tw) in p.undegenerate.items():
        check_curve_length(l, f"curve {i} length")
        lengths[i], twists[i] = l, tw
    for i, (a, b, c, d) in p.degenerate.items():
        if not all(math.isfinite(v) for v in (a, b, c, d)):
            raise InvalidStratumPoint(f"curve {i}: non-finite coordinates")
        if b == 0.0 and c == 0.0:
            cut[i] = (SplitComplex(math.hypot(d, a), a), d)
        else:
            l, angle, cc = H_inverse(a, b, c, d)
            lengths[i] = l
            twists[i] = twist_from_theta(l, SplitComplex(angle, cc))
    periph = list(p.peripherals)
    if len(periph) != len(dec.peripherals):
        raise NotContained("stratum point has the wrong number of peripherals")
    for j, (l, d) in enumerate(periph):
        check_peripheral(l, d, f"peripheral {j}")
    return build_structure(dec, lengths, twists, periph, cut)


# ---------------------------------------------------------------------------
# pinch paths


@dataclass(frozen=True)
class PinchTarget:
    length: SplitComplex
    im_theta: float


@dataclass(frozen=True)
class PinchStep:
    index: int
    point: FNPoint
    stratum: StratumPoint
    beta: dict[int, BoundaryPoint]


def make_schedule(x0: FNPoint, curves, target, steps: int, direction: int = 1,
                  rate: float = 1.0, mode: str = "exponential") -> list[dict[int, PinchTarget]]:
    """Explicit schedule for ``pinch_path``.

    ``exponential``: length l_inf + (l_0 - l_inf) e^-n; ``linear``: length
    interpolated to reach ``target`` at the last step.  Both set
    Im theta = direction * rate * n at step n.  ``constant`` repeats the
    data of x0.
    """
    target = _sc(target)
    out = []
    for n in range(1, int(steps) + 1):
        step = {}
        for i in curves:
            l0 = x0.lengths[i]
            im0 = theta_renorm(l0, x0.twists[i]).im
            if mode == "constant":
                step[i] = PinchTarget(l0, im0)
                continue
            if mode == "exponential":
                l = target + (l0 - target) * math.exp(-n)
            elif mode == "linear":
                l = l0 + (target - l0) * (n / int(steps))
            else:
                raise ScheduleInvalid(f"unknown schedule mode {mode!r}")
            step[i] = PinchTarget(l, direction * rate * n)
        out.append(step)
    return out


def _validate_schedule(D, schedule) -> None:
    if not schedule:
        raise ScheduleInvalid("empty schedule")
    for n, step in enumerate(schedule):
        if set(step) != set(D):
            raise ScheduleInvalid(f"step {n} does not cover exactly the curves of D")
        for i, tgt in step.items():
            if cone_classify(tgt.length) is not ConeClass.InteriorCPlus:
                raise ScheduleInvalid(f"step {n}: length of curve {i} is not in C+")
            if not math.isfinite(tgt.im_theta):
                raise ScheduleInvalid(f"step {n}: non-finite angle for curve {i}")
    for i in D:
        seq = np.array([step[i].im_theta for step in schedule])
        d = np.diff(seq)
        if (d > 0).any() and (d < 0).any():
            raise ScheduleInvalid(f"Im theta of curve {i} is not monotone")


def neighbor_fixed_point(s: SurfaceStructure, curve: int) -> BoundaryPoint:
    """Attracting point of the neighbouring boundary generator across ``curve``,
    in the frame where the curve's first end has axis [0,1] -> [1,0].

    For a canonical gluing with twist tw this is [e^l e+ + e^m e-, 1] where
    (l, m) are the idempotent coordinates of tw.
    """
    comp, li = s.component_of_curve(curve)
    glued = comp.glued
    (qa, a), (qb, b) = glued.decomposition.curves[li].ends
    frame = normalizer(glued.local[qa], a)
    m = glued.transitions[li]
    if qa == qb:
        p = fixed_points(glued.local[qa][a]).repelling
    else:
        p = fixed_points(glued.local[qb][prev_gen(b)]).attracting
    return act(frame @ m, p)


def pinch_path(dec: PantsDecomposition, D, x0: FNPoint, schedule) -> list[PinchStep]:
    """Follow a coordinate path that pinches the curves of D."""
    D = _check_multicurve(dec, D)
    x0.validate(dec)
    _validate_schedule(D, schedule)
    theta0 = {i: theta_renorm(x0.lengths[i], x0.twists[i]) for i in D}
    out = []
    for n, step in enumerate(schedule):
        x = x0
        for i, tgt in step.items():
            theta = SplitComplex(theta0[i].re, tgt.im_theta)
            x = x.with_curve(i, length=tgt.length, twist=twist_from_theta(tgt.length, theta))
        s = coords_to_structure(dec, x)
        beta = {i: neighbor_fixed_point(s, i) for i in sorted(D)}
        out.append(PinchStep(n, x, stratum_coords(dec, D, s), beta))
    return out


def pinch_limit(dec: PantsDecomposition, D, x0: FNPoint, lengths: dict[int, SplitComplex],
                direction: int = 1) -> StratumPoint:
    """Stratum point that a pinch with loxodromic limit lengths converges to."""
    D = _check_multicurve(dec, D)
    und = {i: (x0.lengths[i], x0.twists[i]) for i in range(len(dec.curves)) if i not in D}
    deg = {}
    for i in D:
        l = _sc(lengths[i])
        deg[i] = (l.im, 0.0, 0.0, sign(direction) * math.sqrt(square_norm(l)))
    per = tuple(zip(x0.peripheral_lengths, x0.deltas))
    return StratumPoint(und, deg, per)


# ---------------------------------------------------------------------------
# limit sets


def _fixed_point_error(words, scale):
    # roundoff in a product is about eps * (product of factor norms); an
    # eigenvector moves by that over the eigenvalue gap, amplified by |M|/gap
    norm = np.sqrt(np.einsum("nij,nij->n", words, words))
    tr = words[:, 0, 0] + words[:, 1, 1]
    gap = np.sqrt(np.abs(tr * tr - 4.0))
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(gap > 0, np.finfo(float).eps * scale * np.maximum(norm, 1.0) / (gap * gap), np.inf)


def limit_set_sample(s: SurfaceStructure, max_word_length: int,
                     max_error: float = 1e-10) -> list[BoundaryPoint]:
    """Attracting fixed points of all reduced words up to the given length.

    Words run over the global generators and their inverses; output follows
    word enumeration order (by length, then lexicographically by generator).
    Words whose fixed points cannot be resolved to ``max_error`` in angle
    (large entries against a small eigenvalue gap) are skipped.
    """
    glued = s.holonomy()
    gens = glued.generators
    names = sorted(gens)
    mats = []
    for name in names:
        g = gens[name]
        mats.append(np.stack([g.plus, g.minus]))
        gi = g.inverse()
        mats.append(np.stack([gi.plus, gi.minus]))
    mats = np.array(mats)
    inverse_of = np.arange(len(mats)) ^ 1
    out: list[BoundaryPoint] = []
    gen_norm = np.sqrt(np.einsum("gfij,gfij->gf", mats, mats))
    words = np.array([np.stack([np.eye(2), np.eye(2)])])
    last = np.array([-1], dtype=np.int64)
    scale = np.ones((1, 2))
    for _ in range(int(max_word_length)):
        words, last, parent = _kernels.extend_words(words, last, mats, inverse_of)
        scale = scale[parent] * gen_norm[last]
        ap, _, kp = _kernels.fixed_points(words[:, 0])
        am, _, km = _kernels.fixed_points(words[:, 1])
        ok = (kp == 1) & (km == 1)
        for f in range(2):
            ok &= _fixed_point_error(words[:, f], scale[:, f]) <= max_error
        for k in np.flatnonzero(ok):
            out.append(BoundaryPoint(tuple(ap[k]), tuple(am[k])))
    return out


def cyclic_order_preserved(points, tol: float = 1e-9) -> bool:
    """Whether the points lie on the graph of a cyclic-order-preserving map RP1 -> RP1.

    Points are sorted by their first angle; samples whose first angles agree
    within ``tol`` are a tie and are ordered by their second angle.  Stepping
    through them, the second angle may not move backwards by more than
    ``tol`` and must wind around RP1 exactly once (or not at all, when every
    sample sits at one point).
    """
    if len(points) < 3:
        return True
    ang = np.array([p.angles() for p in points])
    order = np.argsort(ang[:, 0], kind="stable")
    a, b = ang[order, 0], ang[order, 1]
    cuts = np.flatnonzero(np.diff(a) > tol) + 1
    groups = np.split(np.arange(len(a)), cuts)
    if len(groups) > 1 and a[0] + math.pi - a[-1] <= tol:
        groups[0] = np.concatenate([groups.pop(), groups[0]])  # tie across the wrap
    seq = []
    prev = b[groups[-1][-1]]
    for g in groups:
        fwd = np.mod(b[g] - prev, math.pi)
        fwd = np.where(fwd > math.pi - tol, fwd - math.pi, fwd)
        g = g[np.argsort(fwd, kind="stable")]
        seq.extend(b[g])
        prev = b[g[-1]]
    b = np.array(seq)
    step = np.mod(np.diff(np.append(b, b[0])), math.pi)
    # a small backwards step shows up as a step just under pi
    step = np.where(step > math.pi - tol, step - math.pi, step)
    if np.any(step < -tol):
        return False
    winding = float(np.sum(step))
    slack = tol * len(b)
    return abs(winding - math.pi) <= slack or abs(winding) <= slack
