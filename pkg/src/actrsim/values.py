"""Slot values: symbols, numbers and chunk references, plus their text form."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

SYMBOL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*\Z")
_INT_RE = re.compile(r"[+-]?\d+\Z")
_FRACTION_RE = re.compile(r"([+-]?\d+)/(\d+)\Z")
_FLOAT_RE = re.compile(r"[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?\Z")


@dataclass(frozen=True, order=True)
class Ref:
    """Reference from a slot to another chunk."""

    id: str

    def __str__(self):
        return "@" + self.id


def is_number(value) -> bool:
    return isinstance(value, Number) and not isinstance(value, bool)


def normalize(value):
    """Collapse whole fractions to ``int`` so ``Fraction(4, 4)`` prints as ``1``."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    return value


def parse_literal(token: str):
    """Parse a bare literal token into a slot value.

    ``36`` -> int, ``0.5`` -> float, ``4/5`` -> Fraction, ``@g1`` -> Ref,
    anything symbol-shaped -> str. Raises ValueError otherwise.
    """
    if token.startswith("@"):
        name = token[1:]
        if not SYMBOL_RE.match(name):
            raise ValueError(f"bad chunk reference {token!r}")
        return Ref(name)
    if _INT_RE.match(token):
        return int(token)
    m = _FRACTION_RE.match(token)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {token!r}")
        return normalize(Fraction(int(m.group(1)), den))
    if _FLOAT_RE.match(token):
        return float(token)
    if SYMBOL_RE.match(token):
        return token
    raise ValueError(f"not a literal: {token!r}")


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Ref):
        return str(value)
    if isinstance(value, Fraction):
        value = normalize(value)
        if isinstance(value, Fraction):
            return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sort_key(value):
    """Total order over mixed slot values, used for deterministic listings."""
    if is_number(value):
        return (0, value, "")
    if isinstance(value, str):
        return (1, 0, value)
    if isinstance(value, Ref):
        return (2, 0, value.id)
    return (3, 0, repr(value))
