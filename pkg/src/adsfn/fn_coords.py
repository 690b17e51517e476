"""Surface coordinates: B-lengths and twist-bends of a pants decomposition,
with peripheral (length, delta) data for punctured surfaces."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .decomposition import PantsDecomposition
from .errors import ConeViolation, ConstraintViolation, DegenerateCurve, NotContained
from .gluing import GluedRep, assemble, curve_length, dehn_twist_rep, extract_twist
from .isometry import b_length
from .pants import GENERATORS, realize_pants
from .split_algebra import (ConeClass, SplitComplex, cone_classify, lightlike_threshold,
                            square_norm)

E_TOL = 1e-10


def _sc(v) -> SplitComplex:
    return v if isinstance(v, SplitComplex) else SplitComplex.from_json(v)


def sign(x: float) -> int:
    return (x > 0) - (x < 0)


def check_curve_length(l: SplitComplex, what: str) -> None:
    if cone_classify(l) is not ConeClass.InteriorCPlus:
        raise ConeViolation(f"{what} = {l!r} is not in the open cone C+")


def check_peripheral(l: SplitComplex, delta: float, what: str) -> None:
    if not (math.isfinite(l.re) and math.isfinite(l.im) and math.isfinite(delta)):
        raise ConstraintViolation(f"{what} has non-finite data")
    if cone_classify(l) is ConeClass.Outside:
        raise ConeViolation(f"{what} length {l!r} lies outside the closed cone")
    gap = delta * delta - square_norm(l)
    if abs(gap) > E_TOL * (1.0 + l.re * l.re + l.im * l.im):
        raise ConstraintViolation(f"{what}: delta^2 - |length|^2 = {gap!r}")


@dataclass(frozen=True)
class FNPoint:
    """Lengths and twists per curve, (length, delta) per peripheral slot."""

    lengths: tuple[SplitComplex, ...]
    twists: tuple[SplitComplex, ...]
    peripheral_lengths: tuple[SplitComplex, ...] = ()
    deltas: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(map(_sc, self.lengths)))
        object.__setattr__(self, "twists", tuple(map(_sc, self.twists)))
        object.__setattr__(self, "peripheral_lengths", tuple(map(_sc, self.peripheral_lengths)))
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
        if len(self.lengths) != len(self.twists):
            raise ValueError("need one twist per curve length")
        if len(self.peripheral_lengths) != len(self.deltas):
            raise ValueError("need one delta per peripheral length")

    def epsilon(self, j: int) -> int:
        return sign(self.deltas[j])

    def validate(self, dec: PantsDecomposition | None = None) -> None:
        if dec is not None and (len(self.lengths) != len(dec.curves)
                                or len(self.deltas) != len(dec.peripherals)):
            raise ValueError("point does not match the decomposition")
        for i, l in enumerate(self.lengths):
            check_curve_length(l, f"curve {i} length")
        for j, (l, d) in enumerate(zip(self.peripheral_lengths, self.deltas)):
            check_peripheral(l, d, f"peripheral {j}")

    def max_difference(self, other: "FNPoint") -> float:
        pairs = list(zip(self.lengths + self.twists + self.peripheral_lengths,
                         other.lengths + other.twists + other.peripheral_lengths))
        worst = max((max(abs(a.re - b.re), abs(a.im - b.im)) for a, b in pairs), default=0.0)
        return max([worst] + [abs(a - b) for a, b in zip(self.deltas, other.deltas)])

    def is_close(self, other: "FNPoint", tol: float = 1e-8) -> bool:
        return (len(self.lengths) == len(other.lengths) and len(self.deltas) == len(other.deltas)
                and self.max_difference(other) <= tol)

    def with_curve(self, i: int, length=None, twist=None) -> "FNPoint":
        lengths, twists = list(self.lengths), list(self.twists)
        if length is not None:
            lengths[i] = _sc(length)
        if twist is not None:
            twists[i] = _sc(twist)
        return FNPoint(tuple(lengths), tuple(twists), self.peripheral_lengths, self.deltas)

    def to_json(self) -> dict:
        return {
            "curves": [{"length": l.to_json(), "twist": t.to_json()}
                       for l, t in zip(self.lengths, self.twists)],
            "peripherals": [{"length": l.to_json(), "delta": d}
                            for l, d in zip(self.peripheral_lengths, self.deltas)],
        }

    @classmethod
    def from_json(cls, data) -> "FNPoint":
        curves = data.get("curves", [])
        periph = data.get("peripherals", [])
        return cls(tuple(_sc(c["length"]) for c in curves), tuple(_sc(c["twist"]) for c in curves),
                   tuple(_sc(p["length"]) for p in periph), tuple(float(p["delta"]) for p in periph))


@dataclass
class Component:
    """One connected piece of the surface cut along the degenerate curves."""

    pants: list[int]
    glued: GluedRep
    pants_map: dict[int, int]
    curve_map: dict[int, int]
    peripheral_map: dict[tuple, int]


@dataclass
class SurfaceStructure:
    """Holonomy of each component of S minus D' together with sawtooth tags.

    ``tags`` maps ``("peripheral", j)`` and ``("curve", i)`` (for i in the
    degenerate set) to epsilon in {-1, 0, +1}.
    """

    decomposition: PantsDecomposition
    degenerate: frozenset[int]
    components: list[Component]
    tags: dict[tuple, int] = field(default_factory=dict)

    def component_of_curve(self, i: int) -> tuple[Component, int]:
        for comp in self.components:
            if i in comp.curve_map:
                return comp, comp.curve_map[i]
        raise KeyError(f"curve {i} is not glued in any component")

    def component_of_pants(self, q: int) -> tuple[Component, int]:
        for comp in self.components:
            if q in comp.pants_map:
                return comp, comp.pants_map[q]
        raise KeyError(q)

    def slot_holonomy(self, slot):
        comp, lq = self.component_of_pants(slot[0])
        return comp.glued.local[lq][slot[1]]

    def holonomy(self) -> GluedRep:
        if len(self.components) != 1:
            raise DegenerateCurve("structure is degenerate along "
                                  f"{sorted(self.degenerate)}; it has no single holonomy")
        return self.components[0].glued

    def to_json(self) -> dict:
        return {
            "decomposition": self.decomposition.to_json(),
            "degenerate": sorted(self.degenerate),
            "components": [{"pants": c.pants, "holonomy": c.glued.to_json()} for c in self.components],
            "tags": [[k[0], k[1], v] for k, v in sorted(self.tags.items())],
        }

    @classmethod
    def from_json(cls, data) -> "SurfaceStructure":
        dec = PantsDecomposition.from_json(data["decomposition"])
        degenerate = frozenset(int(i) for i in data.get("degenerate", []))
        comps = []
        for c in data["components"]:
            pants = [int(q) for q in c["pants"]]
            _, pmap, cmap, permap = dec.sub_decomposition(pants, degenerate)
            comps.append(Component(sorted(pants), GluedRep.from_json(c["holonomy"]), pmap, cmap, permap))
        tags = {(str(k), int(i)): int(v) for k, i, v in data.get("tags", [])}
        return cls(dec, degenerate, comps, tags)


# ---------------------------------------------------------------------------
# building structures


def build_structure(dec: PantsDecomposition, lengths: dict[int, SplitComplex],
                    twists: dict[int, SplitComplex], peripherals, cut=None) -> SurfaceStructure:
    """Realize and glue every pants.

    ``lengths``/``twists`` cover the glued curves, ``peripherals`` is a list
    of ``(length, delta)`` and ``cut`` maps degenerate curves to
    ``(length, delta)``.
    """
    cut = dict(cut or {})
    removed = set(cut)
    comps = []
    for pants in dec.components(removed):
        sub, pmap, cmap, permap = dec.sub_decomposition(pants, removed)

        def slot_length(q, g):
            kind, idx = dec.slot_owner((q, g))
            if kind == "peripheral":
                return peripherals[idx][0]
            return cut[idx][0] if idx in cut else lengths[idx]

        reps = [realize_pants(*(slot_length(q, g) for g in GENERATORS)) for q in sorted(pants)]
        local_tw = [None] * len(sub.curves)
        for i, li in cmap.items():
            local_tw[li] = twists[i]
        comps.append(Component(sorted(pants), assemble(sub, reps, local_tw), pmap, cmap, permap))
    tags = {("peripheral", j): sign(d) for j, (_, d) in enumerate(peripherals)}
    tags.update({("curve", i): sign(d) for i, (_, d) in cut.items()})
    return SurfaceStructure(dec, frozenset(cut), comps, tags)


def coords_to_structure(dec: PantsDecomposition, x: FNPoint) -> SurfaceStructure:
    """Glue the representation with the given lengths, twists and peripheral data."""
    x.validate(dec)
    lengths = dict(enumerate(x.lengths))
    twists = dict(enumerate(x.twists))
    periph = list(zip(x.peripheral_lengths, x.deltas))
    return build_structure(dec, lengths, twists, periph)


def peripheral_delta(length: SplitComplex, eps: int) -> float:
    n = square_norm(length)
    if n <= lightlike_threshold(length.re, length.im):
        return 0.0
    return eps * math.sqrt(n)


def structure_to_coords(dec: PantsDecomposition, s: SurfaceStructure) -> FNPoint:
    """Read lengths, twists and peripheral deltas off a non-degenerate structure."""
    if s.degenerate:
        raise DegenerateCurve(f"curves {sorted(s.degenerate)} are degenerate")
    if s.decomposition.to_json() != dec.to_json():
        raise NotContained("structure was built on a different decomposition")
    glued = s.holonomy()
    comp = s.components[0]
    lengths, twists = [], []
    for i in range(len(dec.curves)):
        li = comp.curve_map[i]
        lengths.append(curve_length(glued, li))
        twists.append(extract_twist(glued, li))
    plen, deltas = [], []
    for j, slot in enumerate(dec.peripherals):
        l = b_length(s.slot_holonomy(slot))
        plen.append(l)
        deltas.append(peripheral_delta(l, s.tags.get(("peripheral", j), 0)))
    return FNPoint(tuple(lengths), tuple(twists), tuple(plen), tuple(deltas))


def dehn_twist_structure(s: SurfaceStructure, curve: int, k: int) -> SurfaceStructure:
    """Dehn twist about a glued curve of the structure."""
    comp, li = s.component_of_curve(curve)
    comps = [Component(c.pants, dehn_twist_rep(c.glued, li, k) if c is comp else c.glued,
                       c.pants_map, c.curve_map, c.peripheral_map) for c in s.components]
    return SurfaceStructure(s.decomposition, s.degenerate, comps, dict(s.tags))


def conjugate_structure(s: SurfaceStructure, c) -> SurfaceStructure:
    comps = [Component(p.pants, p.glued.conjugate_by(c), p.pants_map, p.curve_map, p.peripheral_map)
             for p in s.components]
    return SurfaceStructure(s.decomposition, s.degenerate, comps, dict(s.tags))


def random_length(rng, lo: float = 0.5, hi: float = 2.5, bend: float = 0.5) -> SplitComplex:
    re = rng.uniform(lo, hi)
    return SplitComplex(re, rng.uniform(-bend, bend) * re)


def random_point(dec: PantsDecomposition, rng, twist_scale: float = 1.0) -> FNPoint:
    """Random coordinates with lengths well inside C+ and moderate twists."""
    lengths = tuple(random_length(rng) for _ in dec.curves)
    twists = tuple(SplitComplex(*rng.uniform(-twist_scale, twist_scale, 2)) for _ in dec.curves)
    plen = tuple(random_length(rng) for _ in dec.peripherals)
    deltas = tuple(peripheral_delta(l, 1 if rng.random() < 0.5 else -1) for l in plen)
    return FNPoint(lengths, twists, plen, deltas)
