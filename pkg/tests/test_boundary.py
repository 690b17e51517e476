import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from adsfn.boundary import (BoundaryPoint, Orientation, cross_ratio, factor_cross_ratios, from_B,
                            point_at_infinity, real_cross_ratio, sawtooth, spacelike_position)
from adsfn.errors import NotSpacelike
from adsfn.isometry import act, centralizer_element, random_isometry
from adsfn.split_algebra import E_MINUS, E_PLUS, TAU, ZERO, SplitComplex, idempotent_join, log_b

from conftest import close

INF = BoundaryPoint((1.0, 0.0), (1.0, 0.0))
ZERO_PT = BoundaryPoint((0.0, 1.0), (0.0, 1.0))
MINUS_ONE = BoundaryPoint((-1.0, 1.0), (-1.0, 1.0))


def test_from_B_examples():
    assert from_B(ZERO) == ZERO_PT
    assert from_B(TAU) == BoundaryPoint((1.0, 1.0), (-1.0, 1.0))
    assert point_at_infinity() == INF
    # [e+, e-] is ([1:0], [0:1])
    assert BoundaryPoint((1.0, 0.0), (0.0, 1.0)) == BoundaryPoint((3.0, 0.0), (0.0, -2.0))


def test_spacelike_examples():
    assert spacelike_position(INF, ZERO_PT)
    assert not spacelike_position(INF, BoundaryPoint((1.0, 0.0), (0.0, 1.0)))
    assert not spacelike_position(INF, INF)


def test_cross_ratio_normalization_exact():
    for z in (SplitComplex(2.0, 0.5), SplitComplex(-3.0, 1.0), SplitComplex(0.25, -0.125)):
        assert cross_ratio(INF, MINUS_ONE, ZERO_PT, from_B(z)) == z


def test_cross_ratio_of_twisted_point():
    lam, mu = 0.7, -1.1
    tw = idempotent_join(lam, mu)
    p = act(centralizer_element(tw), BoundaryPoint((1.0, 1.0), (1.0, 1.0)))
    cr = cross_ratio(INF, MINUS_ONE, ZERO_PT, p)
    assert close(cr, idempotent_join(math.exp(lam), math.exp(mu)), 1e-14)
    assert close(log_b(cr), tw, 1e-14)


def test_cross_ratio_errors():
    with pytest.raises(NotSpacelike):
        cross_ratio(INF, INF, ZERO_PT, MINUS_ONE)
    with pytest.raises(NotSpacelike):
        cross_ratio(INF, BoundaryPoint((1.0, 0.0), (0.0, 1.0)), ZERO_PT, MINUS_ONE)


def _random_point(rng):
    a, b = rng.uniform(0, math.pi, 2)
    return BoundaryPoint((math.cos(a), math.sin(a)), (math.cos(b), math.sin(b)))


def test_cross_ratio_invariance(rng):
    for _ in range(200):
        pts = [_random_point(rng) for _ in range(4)]
        g = random_isometry(rng)
        a = cross_ratio(*pts)
        b = cross_ratio(*(act(g, p) for p in pts))
        scale = 1 + abs(a.re) + abs(a.im)
        assert close(a, b, 1e-9 * scale)


def test_cross_ratio_factorizes(rng):
    for _ in range(200):
        pts = [_random_point(rng) for _ in range(4)]
        cp, cm = factor_cross_ratios(*pts)
        aff_p = [p.plus[0] / p.plus[1] for p in pts]
        aff_m = [p.minus[0] / p.minus[1] for p in pts]
        ref_p, ref_m = real_cross_ratio(*aff_p), real_cross_ratio(*aff_m)
        assert abs(cp - ref_p) <= 1e-12 * (1 + abs(ref_p)) * 1e3
        assert abs(cm - ref_m) <= 1e-12 * (1 + abs(ref_m)) * 1e3


def test_real_cross_ratio_convention():
    # cr(inf, -1, 0, z) = z, written with a large stand-in for infinity
    assert abs(real_cross_ratio(1e12, -1.0, 0.0, 0.3) - 0.3) < 1e-9


@given(st.floats(0, math.pi), st.floats(0, math.pi), st.floats(0, math.pi), st.floats(0, math.pi))
def test_spacelike_symmetric(a, b, c, d):
    p = BoundaryPoint((math.cos(a), math.sin(a)), (math.cos(b), math.sin(b)))
    q = BoundaryPoint((math.cos(c), math.sin(c)), (math.cos(d), math.sin(d)))
    assert spacelike_position(p, q) == spacelike_position(q, p)


def test_spacelike_invariant(rng):
    for _ in range(100):
        p, q = _random_point(rng), _random_point(rng)
        g = random_isometry(rng)
        assert spacelike_position(p, q) == spacelike_position(act(g, p), act(g, q))


def test_sawtooth_vertices():
    future = sawtooth(INF, ZERO_PT, Orientation.FutureDirected)
    past = sawtooth(INF, ZERO_PT, -1)
    assert future.vertex == BoundaryPoint((1.0, 0.0), (0.0, 1.0))
    assert past.vertex == BoundaryPoint((0.0, 1.0), (1.0, 0.0))
    with pytest.raises(NotSpacelike):
        sawtooth(INF, BoundaryPoint((0.0, 1.0), (1.0, 0.0)), 1)


def test_boundary_json():
    p = BoundaryPoint((0.6, 0.8), (-1.0, 0.0))
    assert BoundaryPoint.from_json(p.to_json()) == p
    assert np.allclose(p.to_json()["plus"], [0.6, 0.8])
