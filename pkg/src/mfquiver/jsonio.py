"""Reading and writing graded matrix factorizations as JSON."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import Poly, WeightSystem, format_rational
from .mfcore import GradedMF, PolyMatrix

SCHEMA_VERSION = 1


class MFFormatError(ValueError):
    """Malformed object file; the message names the offending location."""


def pmat_to_json(mat: PolyMatrix) -> list:
    return [[p.to_json() for p in row] for row in mat]


def mf_to_json(m: GradedMF) -> dict:
    return {
        "weights": m.weights.to_json(),
        "f": m.f.to_json(),
        "even": list(m.even),
        "odd": list(m.odd),
        "q_pm": pmat_to_json(m.q_pm),
        "q_mp": pmat_to_json(m.q_mp),
    }


def _int_list(data: Any, where: str) -> list[int]:
    if not isinstance(data, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in data):
        raise MFFormatError(f"{where}: expected a list of integers")
    return list(data)


def _poly(data: Any, nvars: int, where: str) -> Poly:
    try:
        p = Poly.from_json(data, nvars)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise MFFormatError(f"{where}: {exc}") from None
    if p.nvars != nvars:
        raise MFFormatError(f"{where}: expected {nvars} variables")
    return p


def _matrix(data: Any, rows: int, cols: int, nvars: int, where: str) -> PolyMatrix:
    if not isinstance(data, list) or len(data) != rows:
        raise MFFormatError(f"{where}: expected {rows} rows")
    out = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise MFFormatError(f"{where}[{r}]: expected {cols} entries")
        out.append(tuple(_poly(e, nvars, f"{where}[{r}][{c}]") for c, e in enumerate(row)))
    return tuple(out)


def mf_from_json(data: Any) -> GradedMF:
    if not isinstance(data, dict):
        raise MFFormatError("top level: expected an object")
    missing = {"weights", "f", "even", "odd", "q_pm", "q_mp"} - set(data)
    if missing:
        raise MFFormatError(f"top level: missing keys {sorted(missing)}")
    w = data["weights"]
    if not isinstance(w, dict) or set(w) != {"a", "h"}:
        raise MFFormatError("weights: expected {\"a\": [...], \"h\": H}")
    a = _int_list(w["a"], "weights.a")
    if not isinstance(w["h"], int):
        raise MFFormatError("weights.h: expected an integer")
    try:
        weights = WeightSystem(tuple(a), w["h"])
    except ValueError as exc:
        raise MFFormatError(f"weights: {exc}") from None
    n = weights.nvars
    even = _int_list(data["even"], "even")
    odd = _int_list(data["odd"], "odd")
    f = _poly(data["f"], n, "f")
    q_pm = _matrix(data["q_pm"], len(odd), len(even), n, "q_pm")
    q_mp = _matrix(data["q_mp"], len(even), len(odd), n, "q_mp")
    return GradedMF.build(even, odd, weights, f, q_pm, q_mp)


def load_mf(path: str | Path) -> GradedMF:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MFFormatError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MFFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return mf_from_json(data)
    except MFFormatError as exc:
        raise MFFormatError(f"{path}: {exc}") from None


def save_mf(m: GradedMF, path: str | Path) -> None:
    Path(path).write_text(dumps(mf_to_json(m)), encoding="utf-8")


def _default(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(payload: dict) -> str:
    """Canonical output: schema tag, sorted keys, two-space indent, trailing newline."""
    body = {"schema": SCHEMA_VERSION, **payload}
    return json.dumps(body, sort_keys=True, indent=2, default=_default) + "\n"
