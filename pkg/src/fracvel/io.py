"""CSV and JSON emitters with stable, locale-independent formatting."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Sequence, TextIO

import numpy as np

from .dyadic import DyadicRational

SCHEMA_VERSION = 1


def fmt_float(v: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return format(float(v), ".17g")


def _cell(v: Any) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return "" if v is None else str(v)


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue()


def curve_table(rows: Iterable[tuple[DyadicRational, float]], columns: str = "short"):
    """Header and rows for an ``(x, value)`` curve.

    ``short`` gives ``x,value``; ``full`` adds the exact dyadic form as
    ``x_num,x_exp,x_real,value``.
    """
    if columns == "short":
        return ["x", "value"], [(float(x), v) for x, v in rows]
    if columns == "full":
        return ["x_num", "x_exp", "x_real", "value"], [(x.num, x.exp, float(x), v) for x, v in rows]
    raise ValueError(f"columns must be 'short' or 'full', got {columns!r}")


def jsonable(obj: Any) -> Any:
    """Convert numpy values and drop non-finite floats to ``None``."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def json_text(payload: dict) -> str:
    body = {"schema": SCHEMA_VERSION, **payload}
    return json.dumps(jsonable(body), indent=2, allow_nan=False) + "\n"
