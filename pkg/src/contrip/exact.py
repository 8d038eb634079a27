"""Exact rational arithmetic and fixed-point display rounding.

Scores are reported at three decimals, and score equality (the
differentiation analysis) is defined at that precision. Working in
`fractions.Fraction` keeps those comparisons exact. Floats are rounded
through their shortest decimal repr, so a value that prints as 3.34
rounds like the decimal 3.34 and not like its binary expansion.
"""

from __future__ import annotations

import math
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .errors import DomainError

# Accepted by the exact code paths. Floats are deliberately excluded
# there; see `to_fraction` for how each kind converts.
ExactLike = int | str | Decimal | Fraction
Numeric = ExactLike | float


def parse_decimal(text: str, *, name: str = "value") -> Fraction:
    """Parse a decimal literal exactly, rejecting NaN, infinities and junk."""
    try:
        dec = Decimal(text.strip())
    except (InvalidOperation, ValueError) as exc:
        raise DomainError(f"{name} is not a decimal number: {text!r}") from exc
    if not dec.is_finite():
        raise DomainError(f"{name} must be finite, got {text!r}")
    return Fraction(dec)


def to_fraction(value: Numeric, *, name: str = "value") -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings and Decimals parse as decimal literals. Floats convert to
    their exact binary value (pass a string when the decimal reading
    matters). Non-finite values and non-numbers raise DomainError.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"{name} must be a number, got a bool")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise DomainError(f"{name} must be finite, got {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return parse_decimal(value, name=name)
    raise DomainError(f"{name} must be a number, got {type(value).__name__}")


def _decimal_view(value: Numeric) -> Fraction:
    # Floats round via their shortest repr; everything else is already exact.
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"value must be finite, got {value!r}")
        return Fraction(Decimal(repr(value)))
    return to_fraction(value)


def round_half_away(value: Numeric, digits: int = 3) -> Fraction:
    """Round to ``digits`` decimals with ties away from zero; exact result."""
    scale = 10**digits
    scaled = _decimal_view(value) * scale
    sign = -1 if scaled < 0 else 1
    num, den = abs(scaled.numerator), scaled.denominator
    quot, rem = divmod(num, den)
    if 2 * rem >= den:
        quot += 1
    return Fraction(sign * quot, scale)


def thousandths(value: Numeric) -> int:
    """``value`` as an integer count of thousandths, display-rounded."""
    return int(round_half_away(value, 3) * 1000)


def format_decimal(value: Numeric, digits: int = 3) -> str:
    """Fixed-point decimal string at ``digits`` decimals (e.g. ``4.240``)."""
    units = int(round_half_away(value, digits) * 10**digits)
    sign = "-" if units < 0 else ""
    whole, frac = divmod(abs(units), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def round_float(value: Numeric, digits: int = 3) -> float:
    """Display-rounded value as a float, for JSON payloads."""
    return float(round_half_away(value, digits))


def is_thousandths(value: Numeric) -> bool:
    """True when ``value`` is an exact multiple of 0.001."""
    return (to_fraction(value) * 1000).denominator == 1
