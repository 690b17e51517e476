"""Compare the numba and numpy paths of the hot kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--depth 4]

Both paths run in the same process through the ``use_numba`` switch, so
``ADSFN_NUMBA`` does not need to be set.  The first numba call (compile or
cache load) is timed separately.
"""
import argparse
import time

import numpy as np

from adsfn import _kernels
from adsfn.decomposition import genus2_theta
from adsfn.fn_coords import coords_to_structure, random_point


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def max_diff(a, b):
    # non-hyperbolic words have no fixed points; both paths must agree on which
    if not np.array_equal(np.isnan(a), np.isnan(b)):
        return np.inf
    return float(np.nanmax(np.abs(a - b))) if np.isfinite(a).any() else 0.0


def word_generators(seed):
    dec = genus2_theta()
    glued = coords_to_structure(dec, random_point(dec, np.random.default_rng(seed))).holonomy()
    mats = []
    for name in sorted(glued.generators):
        g = glued.generators[name]
        gi = g.inverse()
        mats.append(np.stack([g.plus, g.minus]))
        mats.append(np.stack([gi.plus, gi.minus]))
    return np.array(mats)


def enumerate_words(gens, depth, use):
    inverse_of = np.arange(len(gens)) ^ 1
    words = np.array([np.stack([np.eye(2), np.eye(2)])])
    last = np.array([-1], dtype=np.int64)
    total = 0
    for _ in range(depth):
        words, last, _ = _kernels.extend_words(words, last, gens, inverse_of, use_numba=use)
        total += len(words)
    return words, total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--points", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy path is available")
    rng = np.random.default_rng(args.seed)
    gens = word_generators(args.seed)
    words, total = enumerate_words(gens, args.depth, use=False)
    mats = words.reshape(-1, 2, 2)
    t = np.linspace(0.1, 5.0, args.points)
    axis = (np.zeros_like(t), np.zeros_like(t), np.exp(t))
    pts = rng.normal(size=(args.points, 2))
    mat = gens[0, 0]

    cases = [
        (f"extend_words (depth {args.depth}, {total} words)",
         lambda use: enumerate_words(gens, args.depth, use)[0]),
        (f"fixed_points ({len(mats)} matrices)", lambda use: _kernels.fixed_points(mats, use_numba=use)[0]),
        (f"curve_length ({args.points} samples)", lambda use: _kernels.curve_length(*axis, use_numba=use)[0]),
        (f"act_points ({args.points} points)", lambda use: _kernels.act_points(mat, pts, use_numba=use)),
    ]
    print(f"{'kernel':<44}{'numpy [s]':>12}{'numba [s]':>12}{'first call':>12}{'speedup':>10}{'max diff':>11}")
    for name, fn in cases:
        t_np, ref = best_of(lambda: fn(False), args.repeat)
        if _kernels.HAVE_NUMBA:
            t0 = time.perf_counter()
            fn(True)
            first = time.perf_counter() - t0
            t_nb, out = best_of(lambda: fn(True), args.repeat)
            diff = max_diff(np.asarray(out), np.asarray(ref))
            print(f"{name:<44}{t_np:>12.4f}{t_nb:>12.4f}{first:>12.4f}{t_np / t_nb:>9.1f}x{diff:>11.1e}")
        else:
            print(f"{name:<44}{t_np:>12.4f}{'-':>12}{'-':>12}{'-':>10}{'-':>11}")


if __name__ == "__main__":
    main()
