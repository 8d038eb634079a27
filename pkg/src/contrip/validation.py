"""Scalar input validation helpers shared across the package.

Errors always name the offending input and its legal range, so callers
(and the CLI) can surface one-line messages without re-deriving context.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError
from .exact import Numeric, to_fraction

RATING_MIN, RATING_MAX = Fraction(1), Fraction(5)
UNIT_MIN, UNIT_MAX = Fraction(0), Fraction(1)


def _check_float(value, lo: float, hi: float, name: str) -> float:
    if isinstance(value, bool):
        raise DomainError(f"{name} must be a number, got a bool")
    try:
        v = float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} is not a number: {value!r}") from exc
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v!r}")
    if not lo <= v <= hi:
        raise DomainError(f"{name} {v:g} is outside the legal range [{lo:g}, {hi:g}]")
    return v


def _check_exact(value: Numeric, lo: Fraction, hi: Fraction, name: str, allow_float: bool) -> Fraction:
    if isinstance(value, float) and not allow_float:
        raise TypeError(
            f"{name}: the exact path takes int, str, Decimal or Fraction, not float; "
            "pass a decimal string, or use the float path"
        )
    v = to_fraction(value, name=name)
    if not lo <= v <= hi:
        raise DomainError(f"{name} {float(v):g} is outside the legal range [{lo}, {hi}]")
    return v


def check_rating(value, *, name: str = "rating") -> float:
    """Validate a star rating in [1, 5] for the float path."""
    return _check_float(value, 1.0, 5.0, name)


def check_consensus(value, *, name: str = "consensus") -> float:
    """Validate a consensus value in [0, 1] for the float path."""
    return _check_float(value, 0.0, 1.0, name)


def check_rating_exact(value: Numeric, *, name: str = "rating", allow_float: bool = False) -> Fraction:
    """Validate a star rating in [1, 5], returning it as an exact Fraction."""
    return _check_exact(value, RATING_MIN, RATING_MAX, name, allow_float)


def check_consensus_exact(value: Numeric, *, name: str = "consensus", allow_float: bool = False) -> Fraction:
    """Validate a unit-interval value ([0, 1]): consensus or a polarity."""
    return _check_exact(value, UNIT_MIN, UNIT_MAX, name, allow_float)
