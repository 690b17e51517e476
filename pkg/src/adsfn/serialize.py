"""Canonical JSON and CSV emission.

Floats are written with Python's shortest round-trip repr and keys are
sorted, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if not math.isfinite(v):
            raise ValueError(f"cannot serialize non-finite float {v!r}")
        return 0.0 if v == 0.0 else v  # drop the sign of -0.0
    if isinstance(obj, (np.integer, bool, int)) and not isinstance(obj, bool):
        return int(obj)
    return obj


def round_floats(obj, digits: int):
    """Round every float to ``digits`` significant digits."""
    if isinstance(obj, dict):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [round_floats(v, digits) for v in obj]
    if isinstance(obj, float):
        v = float(f"{obj:.{digits}g}")
        return 0.0 if v == 0.0 else v
    return obj


def dumps(obj, digits: int | None = None) -> str:
    obj = _plain(obj)
    if digits is not None:
        obj = round_floats(obj, digits)
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def loads(text: str):
    return json.loads(text)


def load(path):
    return json.loads(Path(path).read_text())


def fmt_float(v, digits: int | None = None) -> str:
    v = float(v)
    if digits is not None:
        v = float(f"{v:.{digits}g}")
    return repr(0.0 if v == 0.0 else v)


def csv_text(header, rows, digits: int | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(v, digits) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()
