"""Check records and deterministic CSV/JSON writers."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np


@dataclass
class CheckReport:
    """Outcome of one numerical check.

    ``passed`` is decided by the producer: either ``|measured - expected| <=
    tolerance`` or, for bound checks, the bound held.  ``anchor`` names the
    mathematical statement the check exercises.
    """

    name: str
    measured: object
    expected: object
    tolerance: float
    passed: bool
    anchor: str = ""
    details: dict = field(default_factory=dict)
    runtime_ms: float = 0.0

    @classmethod
    def close(cls, name, measured, expected, tolerance, anchor="", **details) -> "CheckReport":
        ok = bool(abs(measured - expected) <= tolerance)
        return cls(name, measured, expected, tolerance, ok, anchor, details)

    @classmethod
    def bound(cls, name, measured, limit, anchor="", upper=True, **details) -> "CheckReport":
        """``measured <= limit`` (or ``>=`` when ``upper`` is false)."""
        ok = bool(measured <= limit) if upper else bool(measured >= limit)
        return cls(name, measured, limit, 0.0, ok, anchor, details)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: measured={_short(self.measured)} expected={_short(self.expected)} tol={self.tolerance:g}"

    def to_dict(self, runtime: bool = False) -> dict:
        """Plain-data view; ``runtime_ms`` is left out unless asked for so outputs stay reproducible."""
        d = {
            "name": self.name,
            "anchor": self.anchor,
            "measured": _plain(self.measured),
            "expected": _plain(self.expected),
            "tolerance": _plain(self.tolerance),
            "pass": self.passed,
            "details": _plain(self.details),
        }
        if runtime:
            d["runtime_ms"] = self.runtime_ms
        return d


@contextmanager
def timed(holder: list):
    """Append the elapsed milliseconds to ``holder`` on exit."""
    t0 = time.perf_counter()
    try:
        yield
    finally:
        holder.append(1e3 * (time.perf_counter() - t0))


def _short(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{x:.6g}"
    if isinstance(x, complex):
        return f"{x.real:.6g}{x.imag:+.6g}j"
    return str(x)


def _plain(x):
    """Convert numpy and complex values to JSON-ready data."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return _Float(float(x))
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _Float(x.real), "im": _Float(x.imag)}
    return x


class _Float(float):
    """Float rendered with 17 significant digits."""

    def __repr__(self):
        if math.isnan(self):
            return "NaN"
        if math.isinf(self):
            return "Infinity" if self > 0 else "-Infinity"
        return format(float(self), ".17g")


def _iterencode(o, indent, level=0):
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    sep = ","
    if isinstance(o, _Float):
        yield repr(o)
    elif isinstance(o, dict):
        if not o:
            yield "{}"
            return
        yield "{"
        for i, (k, v) in enumerate(o.items()):
            yield (sep if i else "") + pad + json.dumps(k) + ": "
            yield from _iterencode(v, indent, level + 1)
        yield end + "}"
    elif isinstance(o, list):
        if not o:
            yield "[]"
            return
        yield "["
        for i, v in enumerate(o):
            yield (sep if i else "") + pad
            yield from _iterencode(v, indent, level + 1)
        yield end + "]"
    elif isinstance(o, float):
        yield repr(_Float(o))
    else:
        yield json.dumps(o)


# key -> accepted types of one serialised CheckReport
CHECK_SCHEMA = {
    "name": (str,),
    "anchor": (str,),
    "measured": (int, float, dict, list, type(None)),
    "expected": (int, float, dict, list, type(None)),
    "tolerance": (int, float),
    "pass": (bool,),
    "details": (dict,),
}


def validate_report(doc) -> list:
    """Problems found in a parsed command report; empty when it conforms.

    A report is an object with a ``config`` header (command, params, out,
    format, seed, version), a boolean ``pass`` and, when present, a list
    ``checks`` of objects following :data:`CHECK_SCHEMA`.
    """
    problems = []
    if not isinstance(doc, dict):
        return ["report is not an object"]
    cfg = doc.get("config")
    if not isinstance(cfg, dict):
        problems.append("missing config header")
    else:
        for key in ("command", "params", "out", "format", "seed", "version"):
            if key not in cfg:
                problems.append(f"config lacks {key!r}")
    if not isinstance(doc.get("pass"), bool):
        problems.append("missing boolean 'pass'")
    for i, chk in enumerate(doc.get("checks", [])):
        if not isinstance(chk, dict):
            problems.append(f"checks[{i}] is not an object")
            continue
        for key, types in CHECK_SCHEMA.items():
            if key not in chk:
                problems.append(f"checks[{i}] lacks {key!r}")
            elif not isinstance(chk[key], types):
                problems.append(f"checks[{i}].{key} has type {type(chk[key]).__name__}")
    return problems


def dumps_json(obj, indent: int | None = 2) -> str:
    """JSON text with every float printed to 17 significant digits."""
    return "".join(_iterencode(_plain(obj), indent)) + "\n"


def dumps_csv(header, rows) -> str:
    """CSV text with '.' decimals and 17 significant digits, independent of locale."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return v
