"""Command-line front end.

Exit codes: 0 success, 2 unreadable or malformed input, 3 non-admissible
isometry under ``--admissible``, 4 invariant violation, 5 invalid pinch
schedule.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import serialize
from .augmented import (cyclic_order_preserved, limit_set_sample, make_schedule, pinch_path,
                        stratum_coords)
from .decomposition import FIXTURES, PantsDecomposition
from .errors import AdSError, InvalidDecomposition, ScheduleInvalid
from .fn_coords import (FNPoint, SurfaceStructure, coords_to_structure, random_point,
                        structure_to_coords)
from .halfspace import (DEFAULT_SAMPLES, geodesic_between, geodesic_lightlike,
                        geodesic_timelike)
from .isometry import (ADMISSIBLE, PARABOLIC_TOL, Isometry, IsometryClass, b_length,
                       classify, fixed_points)
from .split_algebra import SplitComplex

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_ADMISSIBLE = 3
EXIT_INVARIANT = 4
EXIT_SCHEDULE = 5

CLASS_LABEL = {
    IsometryClass.Loxodromic: "Loxodromic",
    IsometryClass.SemiLoxodromicPlus: "Semi-loxodromic+",
    IsometryClass.SemiLoxodromicMinus: "Semi-loxodromic-",
    IsometryClass.Parabolic: "Parabolic",
    IsometryClass.Other: "Other",
}


class InputError(Exception):
    pass


def _read_json(path):
    try:
        return serialize.load(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _parse(fn, data, what):
    try:
        return fn(data)
    except (KeyError, TypeError, ValueError, IndexError, InvalidDecomposition) as exc:
        raise InputError(f"malformed {what}: {exc!r}") from exc


def _decomposition(arg) -> PantsDecomposition:
    if arg in FIXTURES:
        return FIXTURES[arg]()
    return _parse(PantsDecomposition.from_json, _read_json(arg), "decomposition")


def _split_complex(text: str) -> SplitComplex:
    try:
        parts = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from exc
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    return SplitComplex(*parts)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from exc


def _vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from exc


def _point(args, dec) -> FNPoint:
    if args.point:
        return _parse(FNPoint.from_json, _read_json(args.point), "point")
    return random_point(dec, np.random.default_rng(args.seed))


def _structure(args, dec) -> SurfaceStructure:
    if args.structure is None:
        return coords_to_structure(dec, random_point(dec, np.random.default_rng(args.seed)))
    data = _read_json(args.structure)
    if "components" not in data and "curves" in data:
        # an FNPoint file is accepted too
        return coords_to_structure(dec, _parse(FNPoint.from_json, data, "point"))
    return _parse(SurfaceStructure.from_json, data, "structure")


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> tuple[str, int]:
    iso = _parse(Isometry.from_json, _read_json(args.file), "isometry")
    tol = PARABOLIC_TOL if args.tol is None else args.tol
    cls = classify(iso, tol)
    if cls not in ADMISSIBLE:
        text = f"{CLASS_LABEL[cls]}\n"
        return text, EXIT_NOT_ADMISSIBLE if args.admissible else EXIT_OK
    l = b_length(iso, tol)
    fp = fixed_points(iso, tol)
    f = lambda v: serialize.fmt_float(v, args.digits)
    lines = [f"{CLASS_LABEL[cls]}, length=({f(l.re)},{f(l.im)})",
             "attracting=" + _homogeneous(fp.attracting, f),
             "repelling=" + _homogeneous(fp.repelling, f)]
    return "\n".join(lines) + "\n", EXIT_OK


def _homogeneous(p, f) -> str:
    return f"[{f(p.plus[0])}:{f(p.plus[1])}],[{f(p.minus[0])}:{f(p.minus[1])}]"


def cmd_random_point(args) -> tuple[str, int]:
    dec = _decomposition(args.decomposition)
    return serialize.dumps(random_point(dec, np.random.default_rng(args.seed)).to_json(), args.digits), EXIT_OK


def cmd_coords2rep(args) -> tuple[str, int]:
    dec = _decomposition(args.decomposition)
    s = coords_to_structure(dec, _point(args, dec))
    return serialize.dumps(s.to_json(), args.digits), EXIT_OK


def cmd_rep2coords(args) -> tuple[str, int]:
    dec = _decomposition(args.decomposition)
    x = structure_to_coords(dec, _structure(args, dec))
    return serialize.dumps(x.to_json(), args.digits), EXIT_OK


def cmd_stratum(args) -> tuple[str, int]:
    dec = _decomposition(args.decomposition)
    p = stratum_coords(dec, args.multicurve, _structure(args, dec))
    return serialize.dumps(p.to_json(), args.digits), EXIT_OK


PINCH_HEADER = ("step", "curve", "field", "value")


def cmd_pinch(args) -> tuple[str, int]:
    dec = _decomposition(args.decomposition)
    x0 = _point(args, dec)
    direction = {"future": 1, "past": -1}[args.direction]
    D = sorted(set(args.multicurve))
    schedule = make_schedule(x0, D, args.target, args.steps, direction, args.rate, args.mode)
    path = pinch_path(dec, D, x0, schedule)
    rows = []
    for step in path:
        n = step.index + 1
        for i in sorted(step.stratum.undegenerate):
            l, tw = step.stratum.undegenerate[i]
            rows += [(n, i, "length_re", l.re), (n, i, "length_im", l.im),
                     (n, i, "twist_re", tw.re), (n, i, "twist_im", tw.im)]
        for i in sorted(step.stratum.degenerate):
            rows += [(n, i, f, v) for f, v in zip("abcd", step.stratum.degenerate[i])]
            b = step.beta[i]
            rows += [(n, i, "beta_plus_x", b.plus[0]), (n, i, "beta_plus_y", b.plus[1]),
                     (n, i, "beta_minus_x", b.minus[0]), (n, i, "beta_minus_y", b.minus[1])]
    return serialize.csv_text(PINCH_HEADER, rows, args.digits), EXIT_OK


GEODESIC_HEADER = ("t", "x1", "x2", "x3")


def cmd_geodesic(args) -> tuple[str, int]:
    n = DEFAULT_SAMPLES if args.samples is None else args.samples
    try:
        if args.kind == "spacelike":
            rows = geodesic_between(args.start, args.end).sample(n)
        elif args.kind == "timelike":
            rows = geodesic_timelike(args.start, args.delta).sample(n)
        else:
            rows = geodesic_lightlike(args.start, args.direction_vector).sample(n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.format == "json":
        return serialize.dumps(rows, args.digits), EXIT_OK
    return serialize.csv_text(GEODESIC_HEADER, rows.tolist(), args.digits), EXIT_OK


LIMITSET_HEADER = ("index", "plus_x", "plus_y", "minus_x", "minus_y")


def cmd_limitset(args) -> tuple[str, int]:
    dec = _decomposition(args.decomposition)
    pts = limit_set_sample(_structure(args, dec), args.depth)
    if args.check_order:
        tol = 1e-9 if args.tol is None else args.tol
        if not cyclic_order_preserved(pts, tol):
            raise AdSError("sampled limit set is not the graph of a cyclic-order-preserving map")
    if args.format == "json":
        return serialize.dumps([p.to_json() for p in pts], args.digits), EXIT_OK
    rows = [(k, p.plus[0], p.plus[1], p.minus[0], p.minus[1]) for k, p in enumerate(pts)]
    return serialize.csv_text(LIMITSET_HEADER, rows, args.digits), EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for generated test data")
    common.add_argument("--tol", type=float, default=None, help="tolerance override")
    common.add_argument("--samples", type=int, default=None, help="number of samples")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--round", type=int, default=None, dest="digits",
                        help="round JSON floats to this many significant digits")

    p = argparse.ArgumentParser(prog="adsfn", description="Coordinates for GHM anti-de Sitter structures.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify an isometry JSON file")
    c.add_argument("file")
    c.add_argument("--admissible", action="store_true", help="exit 3 unless the isometry is admissible")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("random-point", parents=[common], help="random FN coordinates for a decomposition")
    c.add_argument("decomposition", help="decomposition JSON file or fixture name")
    c.set_defaults(func=cmd_random_point)

    c = sub.add_parser("coords2rep", parents=[common], help="glue the structure with given coordinates")
    c.add_argument("decomposition")
    c.add_argument("point", nargs="?", help="FNPoint JSON (random from --seed if omitted)")
    c.set_defaults(func=cmd_coords2rep)

    c = sub.add_parser("rep2coords", parents=[common], help="read coordinates off a structure")
    c.add_argument("decomposition")
    c.add_argument("structure", nargs="?", help="structure JSON (or an FNPoint JSON)")
    c.set_defaults(func=cmd_rep2coords)

    c = sub.add_parser("stratum", parents=[common], help="augmented coordinates along a multicurve")
    c.add_argument("decomposition")
    c.add_argument("structure", nargs="?")
    c.add_argument("--multicurve", type=_int_list, default=[], help="comma separated curve indices")
    c.set_defaults(func=cmd_stratum)

    c = sub.add_parser("pinch", parents=[common], help="pinch trajectory as CSV")
    c.add_argument("decomposition")
    c.add_argument("point", nargs="?")
    c.add_argument("--multicurve", type=_int_list, required=True)
    c.add_argument("--steps", type=int, default=30)
    c.add_argument("--target", type=_split_complex, default=SplitComplex(5.0, 1.0),
                   help="limit length RE,IM")
    c.add_argument("--direction", choices=("future", "past"), default="future")
    c.add_argument("--rate", type=float, default=1.0)
    c.add_argument("--mode", choices=("exponential", "linear", "constant"), default="exponential")
    c.set_defaults(func=cmd_pinch)

    c = sub.add_parser("geodesic", parents=[common], help="geodesic samples in the half-space model")
    c.add_argument("--kind", choices=("spacelike", "timelike", "lightlike"), default="spacelike")
    c.add_argument("--start", type=_split_complex, default=SplitComplex(1.0, 0.0),
                   help="first endpoint (spacelike) or base point RE,IM")
    c.add_argument("--end", type=_split_complex, default=SplitComplex(-1.0, 0.0))
    c.add_argument("--delta", type=_split_complex, default=SplitComplex(0.0, 1.0))
    c.add_argument("--direction-vector", type=_vector, default=(0.0, 1.0, 1.0))
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.set_defaults(func=cmd_geodesic)

    c = sub.add_parser("limitset", parents=[common], help="attracting fixed points of short words")
    c.add_argument("decomposition")
    c.add_argument("structure", nargs="?")
    c.add_argument("--depth", type=int, default=3, help="maximal word length")
    c.add_argument("--check-order", action="store_true")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.set_defaults(func=cmd_limitset)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except ScheduleInvalid as exc:
        print(f"invalid schedule: {exc}", file=sys.stderr)
        return EXIT_SCHEDULE
    except AdSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
