"""Hot numeric loops, compiled with numba when available.

Each kernel has a loop implementation (compiled by ``numba.njit``) and a
vectorized numpy implementation.  ``ADSFN_NUMBA=0`` in the environment
forces the numpy path; by default numba is used if it imports.

Array conventions: a batch of real 2x2 matrices has shape ``(n, 2, 2)``;
a batch of PSL(2,B) elements has shape ``(n, 2, 2, 2)`` indexed
``[element, factor, row, col]`` with factor 0 = e+ and 1 = e-.
"""
from __future__ import annotations

import math
import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("ADSFN_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


def _maybe_jit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True, fastmath=False)(fn)
    return fn


# ---------------------------------------------------------------------------
# products of words in a generating set


def _extend_words_loop(prev, prev_last, gens, inverse_of):
    n = prev.shape[0]
    g = gens.shape[0]
    count = 0
    for i in range(n):
        for k in range(g):
            if prev_last[i] < 0 or inverse_of[prev_last[i]] != k:
                count += 1
    out = np.empty((count, 2, 2, 2))
    last = np.empty(count, dtype=np.int64)
    parent = np.empty(count, dtype=np.int64)
    m = 0
    for i in range(n):
        for k in range(g):
            if prev_last[i] >= 0 and inverse_of[prev_last[i]] == k:
                continue
            for f in range(2):
                a = prev[i, f]
                b = gens[k, f]
                out[m, f, 0, 0] = a[0, 0] * b[0, 0] + a[0, 1] * b[1, 0]
                out[m, f, 0, 1] = a[0, 0] * b[0, 1] + a[0, 1] * b[1, 1]
                out[m, f, 1, 0] = a[1, 0] * b[0, 0] + a[1, 1] * b[1, 0]
                out[m, f, 1, 1] = a[1, 0] * b[0, 1] + a[1, 1] * b[1, 1]
            last[m] = k
            parent[m] = i
            m += 1
    return out, last, parent


def _extend_words_numpy(prev, prev_last, gens, inverse_of):
    n, g = prev.shape[0], gens.shape[0]
    ii, kk = np.meshgrid(np.arange(n), np.arange(g), indexing="ij")
    ii, kk = ii.ravel(), kk.ravel()
    pl = prev_last[ii]
    keep = (pl < 0) | (inverse_of[np.maximum(pl, 0)] != kk)
    ii, kk = ii[keep], kk[keep]
    out = np.einsum("nfij,nfjk->nfik", prev[ii], gens[kk])
    return out, kk.astype(np.int64), ii.astype(np.int64)


_extend_words_nb = _maybe_jit(_extend_words_loop)


def extend_words(prev, prev_last, gens, inverse_of, use_numba=None):
    """Right-multiply every word in ``prev`` by every non-cancelling generator."""
    use = USE_NUMBA if use_numba is None else use_numba
    args = (np.ascontiguousarray(prev, dtype=float), np.ascontiguousarray(prev_last, dtype=np.int64),
            np.ascontiguousarray(gens, dtype=float), np.ascontiguousarray(inverse_of, dtype=np.int64))
    if use and HAVE_NUMBA:
        return _extend_words_nb(*args)
    return _extend_words_numpy(*args)


# ---------------------------------------------------------------------------
# fixed points of hyperbolic real 2x2 matrices


def _fixed_points_loop(mats, par_tol):
    n = mats.shape[0]
    att = np.empty((n, 2))
    rep = np.empty((n, 2))
    kind = np.empty(n, dtype=np.int64)  # 1 hyperbolic, 0 parabolic, -1 other
    for i in range(n):
        a = mats[i, 0, 0]
        b = mats[i, 0, 1]
        c = mats[i, 1, 0]
        d = mats[i, 1, 1]
        t = a + d
        if t < 0.0:
            a, b, c, d, t = -a, -b, -c, -d, -t
        if abs(t - 2.0) <= par_tol:
            # parabolic (or identity): kernel of M - I
            r1 = abs(a - 1.0) + abs(b)
            r2 = abs(c) + abs(d - 1.0)
            if r1 >= r2:
                x, y = -b, a - 1.0
            else:
                x, y = d - 1.0, -c
            nr = math.hypot(x, y)
            if nr == 0.0:
                kind[i] = -1
                att[i, 0] = np.nan
                att[i, 1] = np.nan
                rep[i, 0] = np.nan
                rep[i, 1] = np.nan
                continue
            kind[i] = 0
            att[i, 0] = x / nr
            att[i, 1] = y / nr
            rep[i, 0] = x / nr
            rep[i, 1] = y / nr
            continue
        if t < 2.0:
            kind[i] = -1
            att[i, 0] = np.nan
            att[i, 1] = np.nan
            rep[i, 0] = np.nan
            rep[i, 1] = np.nan
            continue
        kind[i] = 1
        s = math.sqrt((t - 2.0) * (t + 2.0))
        lam = 0.5 * (t + s)
        for which in range(2):
            ev = lam if which == 0 else 1.0 / lam
            x1, y1 = b, ev - a
            x2, y2 = ev - d, c
            if x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2:
                x, y = x1, y1
            else:
                x, y = x2, y2
            nr = math.hypot(x, y)
            if which == 0:
                att[i, 0] = x / nr
                att[i, 1] = y / nr
            else:
                rep[i, 0] = x / nr
                rep[i, 1] = y / nr
    return att, rep, kind


def _fixed_points_numpy(mats, par_tol):
    m = np.array(mats, dtype=float, copy=True)
    tr = m[:, 0, 0] + m[:, 1, 1]
    m[tr < 0] *= -1.0
    a, b, c, d = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
    t = a + d
    n = m.shape[0]
    att = np.full((n, 2), np.nan)
    rep = np.full((n, 2), np.nan)
    kind = np.full(n, -1, dtype=np.int64)

    par = np.abs(t - 2.0) <= par_tol
    r1 = np.abs(a - 1.0) + np.abs(b)
    r2 = np.abs(c) + np.abs(d - 1.0)
    px = np.where(r1 >= r2, -b, d - 1.0)
    py = np.where(r1 >= r2, a - 1.0, -c)
    pn = np.hypot(px, py)
    okp = par & (pn > 0)
    with np.errstate(invalid="ignore", divide="ignore"):
        v = np.stack([px / pn, py / pn], axis=1)
    att[okp] = v[okp]
    rep[okp] = v[okp]
    kind[okp] = 0

    hyp = (~par) & (t > 2.0)
    with np.errstate(invalid="ignore"):
        s = np.sqrt((t - 2.0) * (t + 2.0))
    lam = 0.5 * (t + s)
    for ev, dest in ((lam, att), (1.0 / lam, rep)):
        x1, y1 = b, ev - a
        x2, y2 = ev - d, c
        first = x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2
        x = np.where(first, x1, x2)
        y = np.where(first, y1, y2)
        nr = np.hypot(x, y)
        with np.errstate(invalid="ignore", divide="ignore"):
            vv = np.stack([x / nr, y / nr], axis=1)
        dest[hyp] = vv[hyp]
    kind[hyp] = 1
    return att, rep, kind


_fixed_points_nb = _maybe_jit(_fixed_points_loop)


def fixed_points(mats, par_tol=1e-8, use_numba=None):
    """Attracting/repelling unit eigenvectors of a batch of SL(2,R) matrices.

    Returns ``(att, rep, kind)`` where ``kind`` is 1 for hyperbolic, 0 for
    parabolic (both outputs hold the unique fixed point) and -1 otherwise.
    """
    use = USE_NUMBA if use_numba is None else use_numba
    mats = np.ascontiguousarray(mats, dtype=float).reshape(-1, 2, 2)
    if use and HAVE_NUMBA:
        return _fixed_points_nb(mats, float(par_tol))
    return _fixed_points_numpy(mats, float(par_tol))


# ---------------------------------------------------------------------------
# Lorentzian length of a sampled curve in the half-space chart


def _curve_length_loop(x1, x2, x3):
    total = 0.0
    worst = np.inf
    for k in range(x1.shape[0] - 1):
        d1 = x1[k + 1] - x1[k]
        d2 = x2[k + 1] - x2[k]
        d3 = x3[k + 1] - x3[k]
        h = 0.5 * (x3[k + 1] + x3[k])
        q = (d1 * d1 - d2 * d2 + d3 * d3) / (h * h)
        scale = (d1 * d1 + d2 * d2 + d3 * d3) / (h * h)
        rel = q / scale if scale > 0.0 else 1.0
        if rel < worst:
            worst = rel
        if q > 0.0:
            total += math.sqrt(q)
    return total, worst


def _curve_length_numpy(x1, x2, x3):
    d1, d2, d3 = np.diff(x1), np.diff(x2), np.diff(x3)
    h = 0.5 * (x3[1:] + x3[:-1])
    q = (d1 * d1 - d2 * d2 + d3 * d3) / (h * h)
    scale = (d1 * d1 + d2 * d2 + d3 * d3) / (h * h)
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.where(scale > 0, q / scale, 1.0)
    worst = float(rel.min()) if rel.size else np.inf
    return float(np.sqrt(np.clip(q, 0.0, None)).sum()), worst


_curve_length_nb = _maybe_jit(_curve_length_loop)


def curve_length(x1, x2, x3, use_numba=None):
    """Midpoint-rule length and the smallest normalized squared step.

    The second value is ``ds^2 / (Euclidean step)^2`` minimized over
    segments; a non-positive value marks a non-space-like segment.
    """
    use = USE_NUMBA if use_numba is None else use_numba
    args = tuple(np.ascontiguousarray(v, dtype=float) for v in (x1, x2, x3))
    if args[0].shape[0] < 2:
        return 0.0, np.inf
    if use and HAVE_NUMBA:
        return _curve_length_nb(*args)
    return _curve_length_numpy(*args)


# ---------------------------------------------------------------------------
# Möbius action on a batch of homogeneous points (one factor)


def _act_points_loop(mat, pts):
    n = pts.shape[0]
    out = np.empty((n, 2))
    for i in range(n):
        x = mat[0, 0] * pts[i, 0] + mat[0, 1] * pts[i, 1]
        y = mat[1, 0] * pts[i, 0] + mat[1, 1] * pts[i, 1]
        nr = math.hypot(x, y)
        out[i, 0] = x / nr
        out[i, 1] = y / nr
    return out


def _act_points_numpy(mat, pts):
    out = pts @ mat.T
    return out / np.hypot(out[:, 0], out[:, 1])[:, None]


_act_points_nb = _maybe_jit(_act_points_loop)


def act_points(mat, pts, use_numba=None):
    use = USE_NUMBA if use_numba is None else use_numba
    mat = np.ascontiguousarray(mat, dtype=float)
    pts = np.ascontiguousarray(pts, dtype=float).reshape(-1, 2)
    if use and HAVE_NUMBA:
        return _act_points_nb(mat, pts)
    return _act_points_numpy(mat, pts)
