"""JSON input and output for points, functions, coefficients and reports.

Output is deterministic: keys sorted, fixed indentation, floats via repr.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InputError
from .gabor import PointSet, TFPoint
from .models import FunctionModel, model_from_json
from .rational import ExactReal, RealBasis

__all__ = [
    "dumps",
    "load_json",
    "parse_exact",
    "parse_value",
    "parse_csv_values",
    "load_basis",
    "points_from_json",
    "load_points",
    "load_function",
    "coeffs_from_json",
    "load_coeffs",
]


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_json(path) -> Any:
    try:
        with open(Path(path), encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


_TERM = re.compile(r"^(?P<coef>[0-9./]+)?\s*\*?\s*(?P<label>[A-Za-z_(][A-Za-z0-9_()]*)?$")


def parse_exact(text: str, basis: RealBasis) -> ExactReal:
    """Parse a linear combination like ``1+sqrt2`` or ``-1/2*sqrt3 + 3``."""
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty expression")
    parts = re.findall(r"[+-]?[^+-]+", s)
    if "".join(parts) != s:
        raise InputError(f"cannot parse {text!r}")
    total = basis.rational(0)
    for part in parts:
        sign = -1 if part.startswith("-") else 1
        body = part.lstrip("+-")
        m = _TERM.match(body)
        if not m or not (m.group("coef") or m.group("label")):
            raise InputError(f"cannot parse term {part!r} in {text!r}")
        try:
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad coefficient in {part!r}") from exc
        label = m.group("label") or "1"
        if label not in basis.labels:
            raise InputError(f"label {label!r} is not in the basis {list(basis.labels)}")
        total = total + basis.unit(label) * (sign * coef)
    return total


def parse_value(value, basis: RealBasis | None):
    """A float, or an ExactReal when a basis is given (strings and numbers accepted)."""
    if isinstance(value, dict):
        return ExactReal.from_json(value, basis)
    if basis is None:
        try:
            return float(value)
        except (TypeError, ValueError) as exc:
            raise InputError(f"not a number: {value!r}; pass --exact for symbolic values") from exc
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        q = Fraction(value) if isinstance(value, int) else Fraction(str(value))
        return basis.rational(q)
    return parse_exact(str(value), basis)


def parse_csv_values(text: str, basis: RealBasis | None = None) -> list:
    items = [x for x in text.split(",") if x.strip()]
    if not items:
        raise InputError("empty value list")
    return [parse_value(x.strip(), basis) for x in items]


def load_basis(path) -> RealBasis:
    obj = load_json(path)
    if isinstance(obj, list):
        obj = {"labels": obj}
    try:
        return RealBasis.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise InputError(f"basis file {path} needs a 'labels' list") from exc


def points_from_json(obj, basis: RealBasis | None = None) -> PointSet:
    if isinstance(obj, dict):
        obj = obj.get("points")
    if not isinstance(obj, list):
        raise InputError("point set JSON must be {'points': [...]}")
    pts = []
    for p in obj:
        if isinstance(p, dict):
            tau, om = p.get("tau"), p.get("omega", 0.0)
        elif isinstance(p, (list, tuple)) and len(p) == 2:
            tau, om = p
        else:
            raise InputError(f"bad point {p!r}")
        pts.append(TFPoint(float(tau), parse_value(om, basis)))
    return PointSet(pts)


def load_points(path, basis: RealBasis | None = None) -> PointSet:
    return points_from_json(load_json(path), basis)


def load_function(path) -> FunctionModel:
    obj = load_json(path)
    if not isinstance(obj, dict):
        raise InputError("function JSON must be an object with a 'kind'")
    return model_from_json(obj)


def coeffs_from_json(obj) -> np.ndarray:
    """Numbers, [re, im] pairs or {"re":..,"im":..}; optionally wrapped in {"coeffs": [...]}."""
    if isinstance(obj, dict):
        obj = obj.get("coeffs")
    if not isinstance(obj, list) or not obj:
        raise InputError("coefficients must be a nonempty list")
    out = []
    for c in obj:
        if isinstance(c, (int, float)) and not isinstance(c, bool):
            out.append(complex(c))
        elif isinstance(c, (list, tuple)) and len(c) == 2:
            out.append(complex(float(c[0]), float(c[1])))
        elif isinstance(c, dict):
            out.append(complex(float(c.get("re", 0.0)), float(c.get("im", 0.0))))
        else:
            raise InputError(f"bad coefficient {c!r}")
    return np.array(out)


def load_coeffs(path) -> np.ndarray:
    return coeffs_from_json(load_json(path))
