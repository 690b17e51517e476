import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from adsfn import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _sl2(rng, n):
    m = rng.normal(size=(n, 2, 2))
    det = np.linalg.det(m)
    m[det < 0, 0] *= -1
    return m / np.sqrt(np.abs(np.linalg.det(m)))[:, None, None]


@needs_numba
def test_extend_words_paths_agree(rng):
    gens = np.stack([_sl2(rng, 6), _sl2(rng, 6)], axis=1)
    inverse_of = np.arange(6) ^ 1
    words = np.array([np.stack([np.eye(2), np.eye(2)])])
    last = np.array([-1])
    for _ in range(3):
        w1, l1, p1 = _kernels.extend_words(words, last, gens, inverse_of, use_numba=True)
        w0, l0, p0 = _kernels.extend_words(words, last, gens, inverse_of, use_numba=False)
        assert np.array_equal(l0, l1) and np.array_equal(p0, p1)
        assert np.allclose(w0, w1, rtol=1e-14, atol=0)
        words, last = w0, l0
    assert len(words) == 6 * 5 * 5


def test_extend_words_skips_inverse():
    gens = np.zeros((2, 2, 2, 2))
    words, last, parent = _kernels.extend_words(np.zeros((1, 2, 2, 2)), np.array([0]), gens, np.array([1, 0]),
                                                use_numba=False)
    assert list(last) == [0] and list(parent) == [0]


@needs_numba
def test_fixed_points_paths_agree(rng):
    m = _sl2(rng, 500)
    m[:5] = [[1, 1], [0, 1]]
    out1 = _kernels.fixed_points(m, use_numba=True)
    out0 = _kernels.fixed_points(m, use_numba=False)
    assert np.array_equal(out0[2], out1[2])
    for a, b in zip(out0[:2], out1[:2]):
        assert np.array_equal(np.isnan(a), np.isnan(b))
        assert np.allclose(a[~np.isnan(a)], b[~np.isnan(b)], atol=1e-14)


@given(st.floats(0.05, 5), st.floats(-3, 3))
def test_fixed_points_are_eigenvectors(l, theta):
    c, s = np.cos(theta), np.sin(theta)
    rot = np.array([[c, -s], [s, c]])
    m = rot @ np.diag([np.exp(l), np.exp(-l)]) @ rot.T
    att, rep, kind = _kernels.fixed_points(m[None], use_numba=False)
    assert kind[0] == 1
    assert abs(abs(att[0] @ rot[:, 0]) - 1) < 1e-10
    assert abs(abs(rep[0] @ rot[:, 1]) - 1) < 1e-10


def test_fixed_points_kinds():
    m = np.array([[[1.0, 1.0], [0.0, 1.0]], [[0.0, -1.0], [1.0, 0.0]], [[-2.0, 0.0], [0.0, -0.5]]])
    att, rep, kind = _kernels.fixed_points(m, use_numba=False)
    assert list(kind) == [0, -1, 1]
    assert np.allclose(np.abs(att[0]), [1, 0]) and np.allclose(np.abs(att[2]), [1, 0])


@needs_numba
def test_curve_length_and_action_agree(rng):
    t = np.linspace(0.0, 2.0, 1001)
    x = (rng.normal(size=t.size) * 1e-3, np.zeros_like(t), np.exp(t))
    l1, w1 = _kernels.curve_length(*x, use_numba=True)
    l0, w0 = _kernels.curve_length(*x, use_numba=False)
    assert abs(l1 - l0) <= 1e-12 * l0 and abs(w1 - w0) <= 1e-12
    pts = rng.normal(size=(100, 2))
    m = _sl2(rng, 1)[0]
    assert np.allclose(_kernels.act_points(m, pts, use_numba=True), _kernels.act_points(m, pts, use_numba=False))


def test_env_flag_selects_numpy():
    code = "from adsfn import _kernels; print(_kernels.USE_NUMBA)"
    env = dict(os.environ, ADSFN_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
    env["ADSFN_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == str(_kernels.HAVE_NUMBA)
