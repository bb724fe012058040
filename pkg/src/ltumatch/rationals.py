"""Exact rational parsing and formatting.

All arithmetic in this package runs on fractions.Fraction. Floats are
rejected on input and produced only for display, never fed back into a
computation.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import FormatError

Rational = Fraction


def parse_rational(value) -> Fraction:
    """Parse a bare int or a "p" / "p/q" string into a Fraction in lowest terms."""
    if isinstance(value, bool):
        raise FormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, _, den = text.partition("/")
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational: {value!r}") from exc
    raise FormatError(
        f"not a rational: {value!r} (floats are rejected, write 'p/q' strings)"
    )


def format_rational(value: Fraction) -> str:
    return str(value)


def decimal_str(value: Fraction, digits: int) -> str:
    """Fixed-point decimal rendering with the given digit count (display only)."""
    if digits < 0:
        raise ValueError("digit count must be nonnegative")
    scaled = round(value * 10**digits)
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled))
    if digits == 0:
        return sign + text
    text = text.rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"
