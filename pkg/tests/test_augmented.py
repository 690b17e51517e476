import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from adsfn.augmented import (H_inverse, H_map, StratumPoint, cyclic_order_preserved,
                             limit_set_sample, make_schedule, neighbor_fixed_point, pinch_limit,
                             pinch_path, reduce_twist, stratum_coords, stratum_coords_inverse,
                             theta_renorm, twist_from_theta)
from adsfn.boundary import BoundaryPoint
from adsfn.decomposition import FIXTURES, genus2_theta, sphere4
from adsfn.errors import (AxisDegenerate, ConeViolation, InvalidStratumPoint, LightLikeElement,
                          NotContained, ScheduleInvalid)
from adsfn.fn_coords import (FNPoint, coords_to_structure, dehn_twist_structure, random_point,
                             structure_to_coords)
from adsfn.isometry import IsometryClass, classify
from adsfn.split_algebra import SplitComplex, square_norm

from conftest import close, cone_points

TWO_PI = 2 * math.pi
E_PM = BoundaryPoint((1.0, 0.0), (0.0, 1.0))
E_MP = BoundaryPoint((0.0, 1.0), (1.0, 0.0))


def test_theta_examples():
    l = SplitComplex(1.3, 0.4)
    assert theta_renorm(l, SplitComplex(0.0)) == SplitComplex(0.0, 0.0)
    assert close(theta_renorm(l, l), SplitComplex(TWO_PI), 1e-15)
    assert close(theta_renorm(SplitComplex(2.0), SplitComplex(1.0)), SplitComplex(math.pi), 1e-15)
    with pytest.raises(LightLikeElement):
        theta_renorm(SplitComplex(1.0, 1.0), SplitComplex(0.2))


@given(cone_points(), st.builds(SplitComplex, st.floats(-5, 5), st.floats(-5, 5)), st.integers(-5, 5))
def test_theta_dehn_shift(l, tw, k):
    a = theta_renorm(l, tw + k * l)
    b = theta_renorm(l, tw)
    assert close(a - b, SplitComplex(TWO_PI * k), 1e-12 * (1 + abs(k)) * 10)
    assert close(twist_from_theta(l, b), tw, 1e-12 * 10 * (1 + abs(tw.re) + abs(tw.im)))


def test_reduce_twist():
    l = SplitComplex(1.5, 0.5)
    tw, k = reduce_twist(l, SplitComplex(4.0, 0.3))
    assert 0 <= tw.re < l.re and k == 2
    assert close(tw + k * l, SplitComplex(4.0, 0.3), 1e-15)


def test_H_examples():
    a, b = 2.0, 0.5
    assert H_map(SplitComplex(a, b), 0.0, 0.0) == pytest.approx((b, math.sqrt(a * a - b * b), 0.0, 0.0))
    l, angle, c = H_inverse(b, math.sqrt(a * a - b * b), 0.0, 0.0)
    assert close(l, SplitComplex(a, b), 1e-15) and angle == 0.0 and c == 0.0
    assert H_inverse(0.1, 0.3, 0.2, 0.0)[2] == 0.0
    with pytest.raises(AxisDegenerate):
        H_inverse(0.1, 0.0, 0.0, 0.5)
    with pytest.raises(ConeViolation):
        H_map(SplitComplex(1.0, 1.0), 0.0, 0.0)


@given(cone_points(0.1, 10), st.floats(0, TWO_PI, exclude_max=True), st.floats(-15, 15))
def test_H_round_trip(l, angle, c):
    x = H_map(l, angle, c)
    assert abs(x[1] ** 2 + x[2] ** 2 + x[3] ** 2 - square_norm(l)) <= 1e-12 * (1 + l.re ** 2)
    l2, angle2, c2 = H_inverse(*x)
    assert close(l2, l, 1e-12 * (1 + l.re))
    assert min(abs(angle2 - angle), TWO_PI - abs(angle2 - angle)) <= 1e-12
    assert abs(c2 - c) <= 1e-12 * (1 + abs(c))


def test_H_limits():
    l = SplitComplex(2.0, 0.6)
    n = math.sqrt(square_norm(l))
    for c in (10.0, 30.0, 300.0):
        for sgn in (1, -1):
            x = H_map(l, 1.0, sgn * c)
            assert abs(x[0] - l.im) == 0.0
            assert math.hypot(x[1], x[2]) <= 2 * n * math.exp(-c)
            assert abs(x[3] - sgn * n) <= 2 * n * math.exp(-2 * c) + 1e-15


def test_stratum_empty_multicurve_matches_coordinates(rng):
    dec = genus2_theta()
    x = random_point(dec, rng)
    p = stratum_coords(dec, set(), coords_to_structure(dec, x))
    assert not p.degenerate
    for i, (l, tw) in p.undegenerate.items():
        assert close(l, x.lengths[i], 1e-9) and close(tw, x.twists[i], 1e-8)


@pytest.mark.parametrize("name", ["genus2-theta", "genus3-loop", "sphere4", "torus2"])
def test_stratum_dehn_invariance(name, rng):
    dec = FIXTURES[name]()
    D = set(range(0, len(dec.curves), 2))
    for _ in range(5):
        s = coords_to_structure(dec, random_point(dec, rng))
        p = stratum_coords(dec, D, s)
        for i in D:
            for k in (1, -2):
                q = stratum_coords(dec, D, dehn_twist_structure(s, i, k))
                assert p.max_difference(q) <= 1e-9


def test_stratum_inverse_round_trip(rng):
    dec = genus2_theta()
    for _ in range(10):
        x = random_point(dec, rng)
        p = stratum_coords(dec, {0, 2}, coords_to_structure(dec, x))
        q = stratum_coords(dec, {0, 2}, stratum_coords_inverse(dec, {0, 2}, p))
        assert p.max_difference(q) <= 1e-9


def test_degenerate_curves(rng):
    dec = genus2_theta()
    und = {1: (SplitComplex(2.0, -0.4), SplitComplex(-0.5, 0.2)), 2: (SplitComplex(1.2, 0.1), SplitComplex(0.1))}
    for abcd, cls, tag in [((0.3, 0.0, 0.0, 1.2), IsometryClass.Loxodromic, 1),
                           ((0.3, 0.0, 0.0, -1.2), IsometryClass.Loxodromic, -1),
                           ((0.5, 0.0, 0.0, 0.0), IsometryClass.SemiLoxodromicPlus, 0),
                           ((-0.5, 0.0, 0.0, 0.0), IsometryClass.SemiLoxodromicMinus, 0),
                           ((0.0, 0.0, 0.0, 0.0), IsometryClass.Parabolic, 0)]:
        p = StratumPoint(und, {0: abcd})
        s = stratum_coords_inverse(dec, {0}, p)
        assert s.degenerate == frozenset({0})
        assert classify(s.slot_holonomy(dec.curves[0].ends[0])) is cls
        assert s.tags[("curve", 0)] == tag
        q = stratum_coords(dec, {0}, s)
        assert p.max_difference(q) <= 1e-9
    with pytest.raises(InvalidStratumPoint):
        stratum_coords_inverse(dec, {0}, StratumPoint(und, {0: (math.nan, 0.0, 0.0, 1.0)}))
    with pytest.raises(NotContained):
        stratum_coords_inverse(dec, {0, 1}, StratumPoint(und, {0: (0.0, 0.0, 0.0, 1.0)}))
    with pytest.raises(NotContained):
        stratum_coords(dec, {7}, coords_to_structure(dec, random_point(dec, rng)))


def test_stratum_point_json():
    p = StratumPoint({1: (SplitComplex(1.0, 0.2), SplitComplex(0.3))}, {0: (0.1, 0.2, 0.3, 0.4)},
                     ((SplitComplex(1.0), 1.0),))
    assert StratumPoint.from_json(p.to_json()).max_difference(p) == 0.0
    assert p.pinched == frozenset()


def _pinch(direction, steps=30):
    dec = genus2_theta()
    x0 = FNPoint((SplitComplex(1.0, 0.2), SplitComplex(1.5, -0.3), SplitComplex(0.8, 0.1)),
                 (SplitComplex(0.3, 0.1), SplitComplex(-0.2, 0.4), SplitComplex(0.5, -0.2)))
    target = SplitComplex(5.0, 1.0)
    schedule = make_schedule(x0, [0], target, steps, direction)
    path = pinch_path(dec, [0], x0, schedule)
    limit = pinch_limit(dec, [0], x0, {0: target}, direction)
    return path, limit, target


@pytest.mark.parametrize("direction", [1, -1])
def test_pinch_convergence(direction):
    path, limit, target = _pinch(direction)
    assert path[-1].stratum.max_difference(limit) <= 1e-6
    want = E_PM if direction > 0 else E_MP
    assert max(path[-1].beta[0].factor_distances(want)) <= 1e-6
    n_l = math.sqrt(square_norm(target))
    for step in path[5:]:
        n = step.index + 1
        a, b, c, d = step.stratum.degenerate[0]
        l_n = step.point.lengths[0]
        bound = 2 * math.sqrt(square_norm(l_n)) * math.exp(-n)
        assert math.hypot(b, c) <= bound * 1.01
    assert abs(path[-1].stratum.degenerate[0][3] - direction * n_l) <= 1e-9


def test_neighbor_point_of_canonical_gluing():
    # [e^lam e+ + e^mu e-, 1] for a gluing with twist lam e+ + mu e-
    dec = genus2_theta()
    x = FNPoint((SplitComplex(1.0, 0.2), SplitComplex(1.5, -0.3), SplitComplex(0.8, 0.1)),
                (SplitComplex(0.4, 0.1), SplitComplex(0.0), SplitComplex(0.0)))
    p = neighbor_fixed_point(coords_to_structure(dec, x), 0)
    assert p.affine() == pytest.approx((math.exp(0.5), math.exp(0.3)), rel=1e-10)


def test_constant_schedule():
    dec = genus2_theta()
    x0 = random_point(dec, np.random.default_rng(3))
    path = pinch_path(dec, [1], x0, make_schedule(x0, [1], SplitComplex(5.0), 4, mode="constant"))
    for step in path[1:]:
        assert step.stratum.max_difference(path[0].stratum) <= 1e-12


def test_invalid_schedules():
    dec = genus2_theta()
    x0 = random_point(dec, np.random.default_rng(3))
    with pytest.raises(ScheduleInvalid):
        make_schedule(x0, [0], SplitComplex(5.0), 3, mode="spiral")
    with pytest.raises(ScheduleInvalid):
        pinch_path(dec, [0], x0, [])
    sched = make_schedule(x0, [0], SplitComplex(5.0), 5)
    sched[2] = {0: type(sched[2][0])(sched[2][0].length, -100.0)}
    with pytest.raises(ScheduleInvalid):
        pinch_path(dec, [0], x0, sched)
    with pytest.raises(ScheduleInvalid):
        pinch_path(dec, [0], x0, make_schedule(x0, [0], SplitComplex(1.0, 2.0), 3, mode="linear"))
    with pytest.raises(ScheduleInvalid):
        pinch_path(dec, [0], x0, make_schedule(x0, [1], SplitComplex(5.0), 3))


def test_limit_set_fuchsian_diagonal():
    dec = genus2_theta()
    x = FNPoint(tuple(SplitComplex(v) for v in (1.0, 1.4, 0.9)), tuple(SplitComplex(v) for v in (0.2, -0.3, 0.1)))
    pts = limit_set_sample(coords_to_structure(dec, x), 3)
    assert pts
    for p in pts:
        assert p.plus == p.minus
    assert limit_set_sample(coords_to_structure(dec, x), 0) == []


@pytest.mark.parametrize("name", ["genus2-theta", "genus3-loop", "torus1"])
def test_limit_set_cyclic_order(name, rng):
    dec = FIXTURES[name]()
    for _ in range(3):
        pts = limit_set_sample(coords_to_structure(dec, random_point(dec, rng)), 3)
        assert cyclic_order_preserved(pts)


def test_cyclic_order_detects_reversal():
    angles = np.linspace(0.1, 3.0, 8)
    good = [BoundaryPoint((math.cos(a), math.sin(a)), (math.cos(a / 2), math.sin(a / 2))) for a in angles]
    assert cyclic_order_preserved(good)
    perm = [0, 3, 1, 6, 2, 7, 4, 5]
    bad = [BoundaryPoint(good[k].plus, good[perm[k]].minus) for k in range(8)]
    assert not cyclic_order_preserved(bad)


def _graph(f, n=40):
    out = []
    for a in np.linspace(0.0, math.pi, n, endpoint=False):
        b = f(a)
        out.append(BoundaryPoint((math.cos(a), math.sin(a)), (math.cos(b), math.sin(b))))
    return out


def test_cyclic_order_degree():
    assert cyclic_order_preserved(_graph(lambda a: a + 0.3 * math.sin(2 * a)))
    assert not cyclic_order_preserved(_graph(lambda a: -a))
    assert not cyclic_order_preserved(_graph(lambda a: 2 * a))
    assert cyclic_order_preserved(_graph(lambda a: 0.7))
