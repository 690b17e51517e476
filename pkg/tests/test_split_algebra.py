import math

import pytest
from hypothesis import given, strategies as st

from adsfn.errors import DomainError, LightLikeElement
from adsfn.split_algebra import (E_MINUS, E_PLUS, ONE, TAU, ZERO, ConeClass, SplitComplex,
                                 arccosh_b, cone_classify, exp_b, idempotent_join,
                                 idempotent_split, invert, log_b, mul, square_norm)

from conftest import close, reals, split_complex


def test_basis_products():
    assert mul(TAU, TAU) == ONE
    assert mul(ONE + TAU, ONE - TAU) == ZERO
    assert mul(E_PLUS, E_PLUS) == E_PLUS
    assert mul(E_PLUS, E_MINUS) == ZERO


def test_square_norm_examples():
    assert square_norm(ONE) == 1.0
    assert square_norm(TAU) == -1.0
    assert square_norm(SplitComplex(2, 1)) == 3.0


def test_invert_examples():
    assert close(invert(SplitComplex(2, 1)), SplitComplex(2 / 3, -1 / 3), 1e-15)
    assert invert(ONE) == ONE
    with pytest.raises(LightLikeElement):
        invert(SplitComplex(1, 1))
    with pytest.raises(ZeroDivisionError):
        ONE / SplitComplex(1, -1)


def test_idempotent_examples():
    assert idempotent_split(TAU) == (1.0, -1.0)
    assert idempotent_split(ONE) == (1.0, 1.0)
    assert idempotent_join(2.0, 3.0) * idempotent_join(5.0, 7.0) == idempotent_join(10.0, 21.0)


def test_transcendental_examples():
    lam, mu = 1.3, 0.4
    z = idempotent_join(math.cosh(lam / 2), math.cosh(mu / 2))
    assert close(arccosh_b(z), idempotent_join(lam / 2, mu / 2), 1e-14)
    assert close(log_b(idempotent_join(math.exp(lam), math.exp(mu))), idempotent_join(lam, mu), 1e-14)
    assert exp_b(ZERO) == ONE
    with pytest.raises(DomainError):
        log_b(TAU)
    with pytest.raises(DomainError):
        arccosh_b(SplitComplex(0.5, 0.0))


def test_cone_examples():
    assert cone_classify(SplitComplex(2, 1)) is ConeClass.InteriorCPlus
    assert cone_classify(SplitComplex(0.7, 0.7)) is ConeClass.BoundaryCPlus
    assert cone_classify(SplitComplex(0.7, -0.7)) is ConeClass.BoundaryCPlus
    assert cone_classify(ZERO) is ConeClass.BoundaryCPlus
    assert cone_classify(TAU) is ConeClass.Outside
    assert cone_classify(SplitComplex(-2, 1)) is ConeClass.Outside


def test_json_round_trip():
    z = SplitComplex(0.1, -2.5)
    assert SplitComplex.from_json(z.to_json()) == z


@given(split_complex, split_complex, split_complex)
def test_ring_laws(u, v, w):
    scale = 1 + max(abs(x) for z in (u, v, w) for x in (z.re, z.im)) ** 3
    assert u * v == v * u
    assert close((u * v) * w, u * (v * w), 1e-12 * scale)
    assert close(u * (v + w), u * v + u * w, 1e-12 * scale)


@given(split_complex, split_complex)
def test_split_is_isomorphism(u, v):
    (a, b), (c, d) = idempotent_split(u), idempotent_split(v)
    p, q = idempotent_split(u * v)
    scale = 1 + abs(a * c) + abs(b * d)
    assert abs(p - a * c) <= 1e-12 * scale and abs(q - b * d) <= 1e-12 * scale
    assert close(idempotent_join(*idempotent_split(u)), u, 1e-12 * (1 + abs(u.re) + abs(u.im)))


@given(split_complex, split_complex)
def test_norm_multiplicative(u, v):
    lhs, rhs = square_norm(u * v), square_norm(u) * square_norm(v)
    assert abs(lhs - rhs) <= 1e-12 * (1 + (u.re ** 2 + u.im ** 2) * (v.re ** 2 + v.im ** 2))


@given(split_complex, split_complex)
def test_conjugation(u, v):
    assert (u * v).conj() == u.conj() * v.conj() or close((u * v).conj(), u.conj() * v.conj(), 1e-9)
    n = u * u.conj()
    assert n.im == 0.0 or abs(n.im) <= 1e-12 * (u.re ** 2 + u.im ** 2)
    assert abs(n.re - square_norm(u)) <= 1e-12 * (1 + u.re ** 2 + u.im ** 2)


@given(st.floats(-20, 20), st.floats(-20, 20))
def test_exp_log_inverse(p, q):
    z = idempotent_join(math.exp(p), math.exp(q))
    assert close(exp_b(log_b(z)), z, 1e-12 * (1 + abs(z.re) + abs(z.im)))


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_log_exp_inverse(p, q):
    # (re, im) storage cancels the smaller exponential when the two differ wildly
    w = idempotent_join(p, q)
    assert close(log_b(exp_b(w)), w, 1e-12 * (1 + abs(p) + abs(q)) * 10)


@given(split_complex)
def test_invert_is_inverse(z):
    n = square_norm(z)
    if abs(n) <= 1e-6 * (1 + z.re ** 2 + z.im ** 2):
        return
    assert close(z * invert(z), ONE, 1e-9)
