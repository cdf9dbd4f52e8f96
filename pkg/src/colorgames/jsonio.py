"""Deterministic JSON serialization helpers and exact-rational encoding.

All structured output of the package goes through :func:`dumps` so that a
given object always serializes to the same byte sequence (sorted keys, fixed
separators, no trailing whitespace).  Rational coordinates are carried as
strings ``"p/q"`` (or ``"p"`` when the denominator is 1) and parsed into
:class:`fractions.Fraction` on the way back in.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ValidationError


def rat_to_str(x) -> str:
    """Encode an exact rational as ``"p"`` or ``"p/q"`` in lowest terms."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def rat_from_str(s) -> Fraction:
    """Parse a rational encoded as ``"p"``, ``"p/q"``, or a JSON number."""
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, float):
        # Floats appear only in hand-written inputs; take them literally.
        return Fraction(s).limit_denominator(10**12)
    if not isinstance(s, str):
        raise ValidationError(f"cannot parse rational from {s!r}")
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse rational from {s!r}") from exc


def dumps(obj) -> str:
    """Serialize ``obj`` deterministically (byte-identical across runs)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def dump_path(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc


def load_path(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
