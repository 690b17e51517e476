import itertools
import math

import numpy as np
import pytest
from hypothesis import given

from adsfn.boundary import BoundaryPoint
from adsfn.errors import ConeViolation, NotLoxodromic
from adsfn.isometry import IsometryClass, classify, fixed_points, random_isometry
from adsfn.pants import (GENERATORS, PantsRep, b_lengths, normalize_rep, normalizer,
                         realize_pants)
from adsfn.split_algebra import SplitComplex, idempotent_split

from conftest import close, cone_points

INF = BoundaryPoint((1.0, 0.0), (1.0, 0.0))
ZERO = BoundaryPoint((0.0, 1.0), (0.0, 1.0))
MINUS_ONE = BoundaryPoint((-1.0, 1.0), (-1.0, 1.0))


@given(cone_points(), cone_points(), cone_points())
def test_round_trip_and_relation(l1, l2, l3):
    rep = realize_pants(l1, l2, l3)
    for got, want in zip(b_lengths(rep), (l1, l2, l3)):
        assert close(got, want, 1e-9)
    assert rep.relation_residual() <= 1e-9


@given(cone_points(), cone_points(), cone_points())
def test_factor_traces(l1, l2, l3):
    rep = realize_pants(l1, l2, l3)
    for g, l in zip(GENERATORS, (l1, l2, l3)):
        lp, lm = idempotent_split(l)
        assert abs(abs(np.trace(rep[g].plus)) - 2 * math.cosh(lp / 2)) <= 1e-10 * math.cosh(lp / 2)
        assert abs(abs(np.trace(rep[g].minus)) - 2 * math.cosh(lm / 2)) <= 1e-10 * math.cosh(lm / 2)


def test_normalization_of_realized_pants():
    rep = realize_pants(SplitComplex(1.0, 0.2), SplitComplex(2.0, -0.5), SplitComplex(1.5, 0.0))
    fr = fixed_points(rep.r)
    assert fr.attracting == INF and fr.repelling == ZERO
    assert fixed_points(rep.s).repelling == MINUS_ONE


def test_real_lengths_give_equal_factors():
    c = SplitComplex(1.3, 0.0)
    rep = realize_pants(c, c, c)
    for g in GENERATORS:
        assert np.allclose(rep[g].plus, rep[g].minus, atol=1e-14)


def test_boundary_lengths():
    lam = 1.4
    rep = realize_pants(SplitComplex(lam / 2, lam / 2), SplitComplex(1.0, 0.1), SplitComplex(2.0, 0.3))
    assert classify(rep.r) is IsometryClass.SemiLoxodromicPlus
    assert close(b_lengths(rep)[0], SplitComplex(lam / 2, lam / 2), 1e-9)
    rep = realize_pants(SplitComplex(1.0, 0.1), SplitComplex(2.0, 0.3), SplitComplex(0.0, 0.0))
    assert classify(rep.t) is IsometryClass.Parabolic
    assert b_lengths(rep)[2] == SplitComplex(0.0, 0.0)
    with pytest.raises(ConeViolation):
        realize_pants(SplitComplex(0.0, 1.0), SplitComplex(1.0), SplitComplex(1.0))


def test_boundary_slots_in_every_position(rng):
    for slot in range(3):
        for sign in (1, -1):
            ls = [SplitComplex(*rng.uniform([0.5, -0.2], [2.0, 0.2])) for _ in range(3)]
            a = rng.uniform(0.3, 2.0)
            ls[slot] = SplitComplex(a / 2, sign * a / 2)
            rep = realize_pants(*ls)
            assert rep.relation_residual() <= 1e-9
            for got, want in zip(b_lengths(rep), ls):
                assert close(got, want, 1e-9)
            # every loxodromic slot can be normalized
            for g in GENERATORS:
                if classify(rep[g]) is IsometryClass.Loxodromic:
                    normalizer(rep, g)


def test_no_short_elliptic_words():
    rep = realize_pants(SplitComplex(1.0, 0.3), SplitComplex(0.8, -0.2), SplitComplex(1.6, 0.1))
    for factor in ("plus", "minus"):
        gens = [getattr(rep[g], factor) for g in GENERATORS]
        gens += [np.linalg.inv(m) for m in gens]
        for n in range(1, 7):
            for word in itertools.product(range(6), repeat=n):
                if any((word[i] - word[i + 1]) % 6 == 3 for i in range(n - 1)):
                    continue
                m = np.eye(2)
                for k in word:
                    m = m @ gens[k]
                tr = abs(np.trace(m))
                if np.abs(m - np.sign(np.trace(m)) * np.eye(2)).max() < 1e-9:
                    continue
                assert tr >= 2 - 1e-9


def test_normalize_rep(rng):
    rep = realize_pants(SplitComplex(1.0, 0.3), SplitComplex(0.8, -0.2), SplitComplex(1.6, 0.1))
    same, c = normalize_rep(rep, "r")
    assert c.is_identity(1e-9) and same.is_close(rep, 1e-9)
    conj = rep.conjugate_by(random_isometry(rng))
    for g in GENERATORS:
        n1, _ = normalize_rep(rep, g)
        n2, _ = normalize_rep(conj, g)
        assert n1.is_close(n2, 1e-8)
        fp = fixed_points(n2[g])
        nxt = {"r": "s", "s": "t", "t": "r"}[g]
        assert fp.attracting == INF and fp.repelling == ZERO
        assert fixed_points(n2[nxt]).repelling == MINUS_ONE
    semi = realize_pants(SplitComplex(0.5, 0.5), SplitComplex(1.0), SplitComplex(1.0))
    with pytest.raises(NotLoxodromic):
        normalize_rep(semi, "r")


def test_conjugated_rep_same_lengths(rng):
    rep = realize_pants(SplitComplex(1.0, 0.3), SplitComplex(0.8, -0.2), SplitComplex(1.6, 0.1))
    conj = rep.conjugate_by(random_isometry(rng))
    for a, b in zip(b_lengths(rep), b_lengths(conj)):
        assert close(a, b, 1e-9)


def test_json():
    rep = realize_pants(SplitComplex(1.0, 0.3), SplitComplex(0.8, -0.2), SplitComplex(1.6, 0.1))
    assert PantsRep.from_json(rep.to_json()).is_close(rep, 1e-15)
