"""Deterministic CSV / JSON serialization.

Floats are always written in scientific notation with 17 significant
digits, which round-trips every double.
"""

from __future__ import annotations

import csv
import io
import json
import math
from enum import Enum
from fractions import Fraction

import gmpy2


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".16e")


def format_bigreal(x, digits: int = 40) -> str:
    """Scientific notation for an mpfr with ``digits`` significant digits."""
    x = gmpy2.mpfr(x) if not isinstance(x, type(gmpy2.mpfr(0))) else x
    if not gmpy2.is_finite(x):
        return format_float(float(x))
    if x == 0:
        return format(0.0, f".{digits - 1}e")
    mant, exp, _ = x.digits(10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    return f"{sign}{mant[0]}.{mant[1:]}e{exp - 1:+03d}"


def _scalar(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, int):
        return value
    if isinstance(value, (float, Fraction)) or isinstance(value, type(gmpy2.mpfr(0))):
        return float(value)
    if hasattr(value, "item"):
        return _scalar(value.item())
    return str(value)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.writer(buf, lineterminator="\n")
    fields = list(rows[0])
    writer.writerow(fields)
    for row in rows:
        out = []
        for key in fields:
            v = _scalar(row[key])
            out.append(format_float(v) if isinstance(v, float) else ("" if v is None else v))
        writer.writerow(out)
    return buf.getvalue()


def _json(value) -> str:
    if isinstance(value, dict):
        items = (f"{json.dumps(str(k))}: {_json(v)}" for k, v in value.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in value) + "]"
    v = _scalar(value)
    if isinstance(v, float):
        return format_float(v) if math.isfinite(v) else "null"
    return json.dumps(v)


def to_json(meta: dict, rows: list[dict]) -> str:
    return _json({"meta": meta, "data": rows}) + "\n"


def read_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
