"""Gluing pants representations along boundary curves with B-valued twists.

A glued representation is kept as a graph of groups: every pants ``q``
carries a local representation ``rho_q`` and every curve ``i`` with ends
``(qa, a)``, ``(qb, b)`` carries a transition ``M_i`` satisfying

    M_i rho_qb(b) M_i^-1 = rho_qa(a)^-1.

Global generators are ``K_q rho_q K_q^-1`` where the frames ``K_q`` are
chained along a spanning tree (``K_qb = K_qa M_i`` on tree curves); on
the remaining curves the stable letter is ``X_i = K_qa M_i K_qb^-1`` with
relation ``X g(b) X^-1 g(a) = e``.  The twist of curve ``i`` is

    log cr(a+, next(a)-, a-, M_i prev(b)+)      (distinct pants)
    log cr(a+, M_i^-1 a+, a-, M_i a-)           (same pants)

evaluated on local data, where ``+``/``-`` are attracting/repelling fixed
points.  Working locally keeps every cross ratio well conditioned no matter
how far a pants sits from the root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .boundary import BoundaryPoint, cross_ratio, factor_cross_ratios, spacelike_position
from .decomposition import Curve, PantsDecomposition, Slot
from .errors import DomainError, LengthMismatch, MissingRecord, NotLoxodromic, NotSpacelike
from .isometry import (Isometry, IsometryClass, act, b_length, centralizer_element,
                       classify, fixed_points, three_point_map)
from .pants import GENERATORS, PantsRep, next_gen, normalizer, prev_gen, slot_name
from .split_algebra import SplitComplex, idempotent_join

LENGTH_TOL = 1e-8

_ZERO = BoundaryPoint((0.0, 1.0), (0.0, 1.0))
_INF = BoundaryPoint((1.0, 0.0), (1.0, 0.0))
_ONE = BoundaryPoint((1.0, 1.0), (1.0, 1.0))

Word = tuple[tuple[str, int], ...]


def gen_id(pants: int, gen: str) -> str:
    return f"p{pants}.{slot_name(gen)}"


def stable_id(curve: int) -> str:
    return f"x{curve}"


@dataclass(frozen=True)
class GluingRecord:
    curve: int
    frame: Isometry           # normalizer of the first end's pants at that end
    canonical: Isometry       # pinned conjugator of the second end (A or B0)
    twist_element: Isometry   # centralizer element Z applied in the frame
    twist: SplitComplex       # twist supplied at gluing time (Dehn twists add lengths)


def _residual(m: Isometry, scale: float = 1.0) -> float:
    return max(min(np.abs(f - np.eye(2)).max(), np.abs(f + np.eye(2)).max())
               for f in (m.plus, m.minus)) / scale


@dataclass
class GluedRep:
    decomposition: PantsDecomposition
    local: list[PantsRep]
    transitions: dict[int, Isometry]
    records: dict[int, GluingRecord] = field(default_factory=dict)
    root: int = 0
    root_frame: Isometry = field(default_factory=Isometry.identity)

    # -- structure ---------------------------------------------------------
    @cached_property
    def _tree(self) -> tuple[int, list[tuple[int, int]], set[int]]:
        return self.decomposition.spanning_tree()

    @property
    def tree_curves(self) -> set[int]:
        return self._tree[2]

    def frames(self) -> list[Isometry]:
        """The conjugators K_q placing each local pants in the global frame."""
        dec = self.decomposition
        root, order, _ = self._tree
        k: list[Isometry | None] = [None] * dec.n_pants
        k[root] = self.root_frame
        for curve, parent_end in order:
            c = dec.curves[curve]
            m = self.transitions[curve]
            qa, qb = c.ends[0][0], c.ends[1][0]
            if parent_end == 0:
                k[qb] = k[qa] @ m
            else:
                k[qa] = k[qb] @ m.inverse()
        return k

    @property
    def generators(self) -> dict[str, Isometry]:
        """Global generators: three per pants plus one stable letter per non-tree curve."""
        k = self.frames()
        out: dict[str, Isometry] = {}
        for q, rep in enumerate(self.local):
            for g in GENERATORS:
                out[gen_id(q, g)] = rep[g].conjugate_by(k[q])
        tree = self.tree_curves
        for i, c in enumerate(self.decomposition.curves):
            if i not in tree:
                qa, qb = c.ends[0][0], c.ends[1][0]
                out[stable_id(i)] = k[qa] @ self.transitions[i] @ k[qb].inverse()
        return out

    @property
    def relations(self) -> list[Word]:
        dec, tree = self.decomposition, self.tree_curves
        rels: list[Word] = []
        for q in range(dec.n_pants):
            rels.append(((gen_id(q, "t"), 1), (gen_id(q, "s"), 1), (gen_id(q, "r"), 1)))
        for i, c in enumerate(dec.curves):
            (qa, a), (qb, b) = c.ends
            if i in tree:
                rels.append(((gen_id(qa, a), 1), (gen_id(qb, b), 1)))
            else:
                x = stable_id(i)
                rels.append(((x, 1), (gen_id(qb, b), 1), (x, -1), (gen_id(qa, a), 1)))
        return rels

    def gen(self, pants: int, g) -> Isometry:
        return self.generators[gen_id(pants, g)]

    def local_gen(self, slot: Slot) -> Isometry:
        return self.local[slot[0]][slot[1]]

    def pants_rep(self, pants: int) -> PantsRep:
        return self.local[pants].conjugate_by(self.frames()[pants])

    def evaluate(self, word: Word, generators=None) -> Isometry:
        gens = self.generators if generators is None else generators
        out = Isometry.identity()
        for name, e in word:
            out = out @ (gens[name] ** e)
        return out

    def relation_residuals(self) -> list[float]:
        """Residuals of the defining relations evaluated on local data."""
        res = [_residual(rep.t @ rep.s @ rep.r) for rep in self.local]
        for i, c in enumerate(self.decomposition.curves):
            m = self.transitions[i]
            ga, gb = self.local_gen(c.ends[0]), self.local_gen(c.ends[1])
            res.append(_residual(m @ gb @ m.inverse() @ ga))
        return res

    def global_relation_residuals(self) -> list[float]:
        """Residuals of the global words, relative to the size of their letters."""
        gens = self.generators
        out = []
        for w in self.relations:
            scale = 1.0
            for name, _ in w:
                g = gens[name]
                scale *= max(np.abs(g.plus).max(), np.abs(g.minus).max())
            out.append(_residual(self.evaluate(w, gens), scale))
        return out

    def conjugate_by(self, c: Isometry) -> "GluedRep":
        return GluedRep(self.decomposition, list(self.local), dict(self.transitions),
                        dict(self.records), self.root, c @ self.root_frame)

    def factor(self, which: int) -> dict[str, np.ndarray]:
        """Real matrices of one factor (0 = e+, 1 = e-) of the global generators."""
        return {k: (v.plus if which == 0 else v.minus) for k, v in self.generators.items()}

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "decomposition": self.decomposition.to_json(),
            "pants": [rep.to_json() for rep in self.local],
            "transitions": [self.transitions[i].to_json() for i in range(len(self.transitions))],
            "root_frame": self.root_frame.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "GluedRep":
        dec = PantsDecomposition.from_json(data["decomposition"])
        local = [PantsRep.from_json(p) for p in data["pants"]]
        trans = {i: Isometry.from_json(m) for i, m in enumerate(data["transitions"])}
        if len(local) != dec.n_pants or len(trans) != len(dec.curves):
            raise ValueError("representation does not match its decomposition")
        frame = Isometry.from_json(data["root_frame"]) if "root_frame" in data else Isometry.identity()
        root = dec.spanning_tree()[0]
        return cls(dec, local, trans, {}, root, frame)


# ---------------------------------------------------------------------------
# twist readback


def _check_curve(glued: GluedRep, curve: int) -> Curve:
    if not 0 <= curve < len(glued.decomposition.curves) or curve not in glued.transitions:
        raise MissingRecord(f"no glued curve {curve}")
    return glued.decomposition.curves[curve]


def _twist_points(glued: GluedRep, curve: int) -> tuple[BoundaryPoint, ...]:
    c = _check_curve(glued, curve)
    (qa, a), (qb, b) = c.ends
    m = glued.transitions[curve]
    fa = fixed_points(glued.local[qa][a])
    if qa == qb:
        return (fa.attracting, act(m.inverse(), fa.attracting), fa.repelling, act(m, fa.repelling))
    nxt = fixed_points(glued.local[qa][next_gen(a)]).repelling
    far = act(m, fixed_points(glued.local[qb][prev_gen(b)]).attracting)
    return (fa.attracting, nxt, fa.repelling, far)


def twist_cross_ratio(glued: GluedRep, curve: int) -> SplitComplex:
    # distinctness only: large twists legitimately crowd the points in angle
    return cross_ratio(*_twist_points(glued, curve), tol=0.0)


def extract_twist(glued: GluedRep, curve: int) -> SplitComplex:
    """B-twist-bend of a glued curve (logarithm taken factor by factor)."""
    pts = _twist_points(glued, curve)
    for i in range(4):
        for j in range(i + 1, 4):
            if not spacelike_position(pts[i], pts[j], 0.0):
                raise NotSpacelike(f"curve {curve}: twist configuration is degenerate")
    cp, cm = factor_cross_ratios(*pts)
    if not (cp > 0.0 and cm > 0.0):
        raise DomainError(f"curve {curve}: cross ratio factors ({cp}, {cm}) are not positive")
    return idempotent_join(math.log(cp), math.log(cm))


def curve_length(glued: GluedRep, curve: int) -> SplitComplex:
    c = _check_curve(glued, curve)
    return b_length(glued.local_gen(c.ends[0]))


# ---------------------------------------------------------------------------
# construction


def _require_loxodromic(g: Isometry, what: str) -> None:
    if classify(g) is not IsometryClass.Loxodromic:
        raise NotLoxodromic(f"{what} is not loxodromic")


def _check_lengths(la: SplitComplex, lb: SplitComplex, curve: int) -> None:
    scale = 1.0 + max(abs(la.re), abs(la.im), abs(lb.re), abs(lb.im))
    if max(abs(la.re - lb.re), abs(la.im - lb.im)) > LENGTH_TOL * scale:
        raise LengthMismatch(f"curve {curve}: B-lengths {la!r} and {lb!r} differ")


def transition(rep_a: PantsRep, a: str, rep_b: PantsRep, b: str, tw, same: bool = False
               ) -> tuple[Isometry, GluingRecord]:
    """The conjugator taking ``rep_b(b)`` to ``rep_a(a)^-1`` with twist ``tw``.

    Distinct pants: the canonical map sends b's attracting/repelling points
    and prev(b)'s attracting point to 0, inf, 1 in the frame where a has
    attracting point inf, repelling point 0 and next(a) repels from -1.
    Same pants: the canonical map sends b's attracting/repelling points and
    a's repelling point to 0, inf and -P, with P the frame position of b's
    repelling point.  The twist is then applied as a centralizer element
    in a's frame.
    """
    tw = SplitComplex.coerce(tw)
    a, b = slot_name(a), slot_name(b)
    frame = normalizer(rep_a, a)
    z = centralizer_element(tw)
    fb = fixed_points(rep_b[b])
    if not same:
        prev_att = fixed_points(rep_b[prev_gen(b)]).attracting
        canon = three_point_map((fb.attracting, fb.repelling, prev_att), (_ZERO, _INF, _ONE))
        m = frame.inverse() @ z @ canon
    else:
        dp = act(frame, fb.attracting)
        dm = act(frame, fb.repelling)
        neg = BoundaryPoint((-dm.plus[0], dm.plus[1]), (-dm.minus[0], dm.minus[1]))
        canon = three_point_map((dp, dm, _ZERO), (_ZERO, _INF, neg))
        m = frame.inverse() @ z @ canon @ frame
    return m, GluingRecord(-1, frame, canon, z, tw)


def assemble(dec: PantsDecomposition, pants_reps, twists) -> GluedRep:
    """Glue local pants representations along every curve of ``dec``.

    ``pants_reps[q]`` is any representation of pants ``q`` (only its
    conjugacy class matters); ``twists[i]`` is the twist of curve ``i``.
    The global frame normalizes the root pants at the first end of curve 0.
    """
    pants_reps = list(pants_reps)
    twists = [SplitComplex.coerce(t) for t in twists]
    if len(pants_reps) != dec.n_pants or len(twists) != len(dec.curves):
        raise ValueError("need one pants representation per pants and one twist per curve")
    trans: dict[int, Isometry] = {}
    records: dict[int, GluingRecord] = {}
    for i, c in enumerate(dec.curves):
        (qa, a), (qb, b) = c.ends
        ga, gb = pants_reps[qa][a], pants_reps[qb][b]
        _require_loxodromic(ga, f"curve {i} end {c.ends[0]}")
        _require_loxodromic(gb, f"curve {i} end {c.ends[1]}")
        _check_lengths(b_length(ga), b_length(gb), i)
        m, rec = transition(pants_reps[qa], a, pants_reps[qb], b, twists[i], same=qa == qb)
        trans[i] = m
        records[i] = replace(rec, curve=i)
    root = dec.spanning_tree()[0]
    frame = Isometry.identity()
    if dec.curves:
        frame = normalizer(pants_reps[root], dec.curves[0].ends[0][1])
    return GluedRep(dec, pants_reps, trans, records, root, frame)


def _pair_decomposition(gen1, gen2, same: bool) -> PantsDecomposition:
    gen1, gen2 = slot_name(gen1), slot_name(gen2)
    if same:
        if gen1 == gen2:
            raise ValueError("self-gluing needs two different boundary generators")
        rest = [g for g in GENERATORS if g not in (gen1, gen2)]
        return PantsDecomposition(1, (Curve(((0, gen1), (0, gen2))),), ((0, rest[0]),))
    periph = [(0, g) for g in GENERATORS if g != gen1] + [(1, g) for g in GENERATORS if g != gen2]
    return PantsDecomposition(2, (Curve(((0, gen1), (1, gen2))),), tuple(periph))


def glue_distinct(rep1: PantsRep, gen1, rep2: PantsRep, gen2, tw) -> GluedRep:
    """Amalgamate two pants along ``gen1`` of the first and ``gen2`` of the second."""
    dec = _pair_decomposition(gen1, gen2, same=False)
    return assemble(dec, [rep1, rep2], [tw])


def glue_self(rep: PantsRep, gen_a, gen_b, tw) -> GluedRep:
    """HNN extension identifying two boundary curves of one pants."""
    dec = _pair_decomposition(gen_a, gen_b, same=True)
    return assemble(dec, [rep], [tw])


def dehn_twist_rep(glued: GluedRep, curve: int, k: int) -> GluedRep:
    """Apply the k-th power of the Dehn twist about ``curve`` to the marking.

    The transition picks up ``rho(a)^k`` on the left, which adds
    ``k * length`` to the twist of ``curve`` and changes nothing else.
    """
    c = _check_curve(glued, curve)
    k = int(k)
    trans = dict(glued.transitions)
    records = dict(glued.records)
    if k:
        ga = glued.local_gen(c.ends[0])
        trans[curve] = (ga ** k) @ trans[curve]
        if curve in records:
            rec = records[curve]
            records[curve] = replace(rec, twist=rec.twist + k * b_length(ga))
    return GluedRep(glued.decomposition, list(glued.local), trans, records, glued.root,
                    glued.root_frame)
