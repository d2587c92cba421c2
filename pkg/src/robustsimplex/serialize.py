"""Deterministic JSON and CSV emission.

Floats are printed with 17 significant digits in JSON (lossless round-trip)
and 12 in CSV, so emitted files are byte-stable across runs and suitable as
golden files. The standard ``json`` module is still used for parsing; only
emission needs the fixed formatting.
"""

from __future__ import annotations

import json as _json
import math


def format_float(x: float, sigdigits: int = 17) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, f".{sigdigits}g")


def format_csv_value(x) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans have no CSV form here")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format_float(x, 12)
    return str(x)


def dumps(obj) -> str:
    """Serialize to a single-line JSON string with 17-digit floats.

    Dict keys keep insertion order; only JSON-representable types are
    accepted (dict, list/tuple, str, int, float, bool, None).
    """
    out: list[str] = []
    _write(obj, out)
    return "".join(out)


def _write(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(_json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            out.append(_json.dumps(key))
            out.append(": ")
            _write(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _write(value, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize object of type {type(obj).__name__}")


def csv_line(fields) -> str:
    return ",".join(format_csv_value(f) for f in fields)
