"""JSON helpers for complex numbers and points.

Complex values are written as ``{"re": float, "im": float}``.  On input the
parts may also be exact rational strings such as ``"1/3"``, and a bare
number is read as a real value.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, List, Sequence


def _part(v: Any) -> float:
    if isinstance(v, str):
        return float(Fraction(v.strip()))
    return float(v)


def complex_from_json(obj: Any) -> complex:
    if isinstance(obj, dict):
        return complex(_part(obj.get("re", 0)), _part(obj.get("im", 0)))
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(_part(obj[0]), _part(obj[1]))
    return complex(_part(obj), 0.0)


def _clean(x: float) -> float:
    # -0.0 would make otherwise identical reports differ byte-wise
    return 0.0 if x == 0 else float(x)


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": _clean(z.real), "im": _clean(z.imag)}


def point_from_json(obj: Sequence) -> tuple:
    return tuple(complex_from_json(c) for c in obj)


def point_to_json(p: Sequence[complex]) -> List[dict]:
    return [complex_to_json(c) for c in p]
