"""Canonical JSON with exact rationals rendered as "p/q" strings.

Canonical form (sorted keys, fixed separators, trailing newline) keeps
artifacts byte-stable across runs so they can be diffed and golden-tested.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def _encode(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_encode(obj), sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def loads(text: str):
    return json.loads(text)


def parse_rational(value) -> Fraction:
    """Accept Fractions, ints, floats and "p/q" strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise ValueError(f"cannot parse rational from {type(value).__name__}")


def parse_vector(values) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)
