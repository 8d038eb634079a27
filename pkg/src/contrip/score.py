"""Core scoring: fuse a platform rating with a review-consensus value.

The fused score blends an item's overall star rating x (1 to 5) with a
consensus value y (0 to 1) describing how strongly its reviews agree:

    raw = min(5, x + (y - 0.5) * alpha)    consensus-adjusted rating, capped at 5
          - (1 - y) * x / beta             disagreement penalty, heavier at high ratings
          - (5 - x) / delta                small offset separating near-tied ratings

With the default weights (alpha=0.5, beta=10, delta=100) the raw score
spans [0.61, 5]; `rescale` maps that band affinely onto the familiar
[1, 5]. The raw score is strictly increasing in consensus everywhere. It
is strictly increasing in rating while term 1 is below the cap, but not
globally: once the cap binds and consensus is low, a higher rating pays a
larger disagreement penalty with nothing left to gain from term 1 (e.g.
raw(4.9, 0.8) = 4.901 > raw(5.0, 0.8) = 4.900). That is a property of the
formula, left as is.

Two evaluation paths are provided. `compute_raw` / `compute` work on
floats and accept anything float-like. `compute_raw_exact` /
`compute_exact` work on exact rationals so that 3-decimal reporting and
equality checks carry no binary rounding error; they reject floats on
purpose (pass decimal strings, ints, Decimals or Fractions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Union

from .errors import DegenerateRangeError, DomainError
from .errors import RangeError as ScaleRangeError
from .exact import Numeric, format_decimal, to_fraction
from .validation import (
    check_consensus,
    check_consensus_exact,
    check_rating,
    check_rating_exact,
)

Stars = Union[float, Fraction]

_FIVE = Fraction(5)
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Weights:
    """Coefficients of the three score terms.

    ``alpha`` scales the consensus adjustment added to the rating,
    ``beta`` divides the disagreement penalty and ``delta`` divides the
    rating-differentiation offset. Values are stored as exact rationals:
    strings parse as decimal literals, floats convert to their exact
    binary value. Defaults are alpha=0.5, beta=10, delta=100.
    """

    alpha: Fraction = Fraction(1, 2)
    beta: Fraction = Fraction(10)
    delta: Fraction = Fraction(100)

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_fraction(self.alpha, name="alpha"))
        object.__setattr__(self, "beta", to_fraction(self.beta, name="beta"))
        object.__setattr__(self, "delta", to_fraction(self.delta, name="delta"))
        if self.alpha < 0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        if self.beta <= 0:
            raise DomainError(f"beta must be > 0, got {self.beta}")
        if self.delta <= 0:
            raise DomainError(f"delta must be > 0, got {self.delta}")


DEFAULT_WEIGHTS = Weights()


@dataclass(frozen=True)
class ScoreBreakdown:
    """Term-by-term decomposition of one evaluation.

    ``raw`` equals ``term1 - term2 - term3`` exactly in whichever
    arithmetic the evaluation ran (float or Fraction). ``scaled`` is
    populated only when rescaling was requested.
    """

    term1: Stars
    term2: Stars
    term3: Stars
    raw: Stars
    scaled: Stars | None = None


@dataclass(frozen=True)
class ScaleRange:
    """Source and target intervals of the affine rescaling, stored exactly."""

    r_min: Fraction
    r_max: Fraction
    t_min: Fraction = Fraction(1)
    t_max: Fraction = Fraction(5)

    def __post_init__(self):
        for field in ("r_min", "r_max", "t_min", "t_max"):
            object.__setattr__(self, field, to_fraction(getattr(self, field), name=field))
        if self.r_min == self.r_max:
            raise DegenerateRangeError(f"source range [{self.r_min}, {self.r_max}] has zero width")
        if self.t_min == self.t_max:
            raise DegenerateRangeError(f"target range [{self.t_min}, {self.t_max}] has zero width")
        if self.r_min > self.r_max:
            raise DomainError("r_min must be smaller than r_max")
        if self.t_min > self.t_max:
            raise DomainError("t_min must be smaller than t_max")


@dataclass(frozen=True)
class RawMinimum:
    """Smallest reachable raw score, with how it was obtained.

    ``method`` is "analytic" when the closed form at the corner
    (rating 1, consensus 0) applies, "grid" when it came from the
    brute-force fallback (beta < 1).
    """

    value: Fraction
    method: Literal["analytic", "grid"]


def _ensure_weights(weights) -> Weights:
    if not isinstance(weights, Weights):
        raise TypeError(f"weights must be a Weights instance, got {type(weights).__name__}")
    return weights


def compute_raw(x, y, weights: Weights = DEFAULT_WEIGHTS) -> ScoreBreakdown:
    """Evaluate the three-term score on floats; ``scaled`` stays unset.

    Args:
        x: overall star rating in [1, 5].
        y: consensus value in [0, 1].
        weights: term coefficients.

    Raises:
        DomainError: naming the offending input when ``x`` or ``y`` is
            out of range or non-finite, or the weights are invalid.
    """
    xf = check_rating(x)
    yf = check_consensus(y)
    w = _ensure_weights(weights)
    alpha, beta, delta = float(w.alpha), float(w.beta), float(w.delta)
    term1 = min(5.0, xf + (yf - 0.5) * alpha)
    term2 = (1.0 - yf) * xf / beta
    term3 = (5.0 - xf) / delta
    return ScoreBreakdown(term1=term1, term2=term2, term3=term3, raw=term1 - term2 - term3)


def compute_raw_exact(x: Numeric, y: Numeric, weights: Weights = DEFAULT_WEIGHTS) -> ScoreBreakdown:
    """Exact-rational counterpart of `compute_raw`.

    ``x`` and ``y`` may be ints, decimal strings, Decimals or Fractions;
    floats raise TypeError (their binary value is rarely what a decimal
    grid means).
    """
    xq = check_rating_exact(x)
    yq = check_consensus_exact(y)
    w = _ensure_weights(weights)
    term1 = min(_FIVE, xq + (yq - _HALF) * w.alpha)
    term2 = (1 - yq) * xq / w.beta
    term3 = (_FIVE - xq) / w.delta
    return ScoreBreakdown(term1=term1, term2=term2, term3=term3, raw=term1 - term2 - term3)


def _grid_minimum(weights: Weights) -> Fraction:
    # 401 ratings (step 0.01) by 101 consensus values (step 0.01).
    best: Fraction | None = None
    for i in range(401):
        x = 1 + Fraction(i, 100)
        term3 = (_FIVE - x) / weights.delta
        for j in range(101):
            y = Fraction(j, 100)
            value = min(_FIVE, x + (y - _HALF) * weights.alpha) - (1 - y) * x / weights.beta - term3
            if best is None or value < best:
                best = value
    assert best is not None
    return best


@lru_cache(maxsize=None)
def analytic_min(weights: Weights = DEFAULT_WEIGHTS) -> RawMinimum:
    """Smallest raw score over the whole (rating, consensus) domain.

    The raw score increases in consensus everywhere, and for beta >= 1 it
    is also non-decreasing in rating at consensus 0, so the minimum sits
    at the corner (1, 0) and has the closed form
    ``min(5, 1 - alpha/2) - 1/beta - 4/delta`` (0.61 for the defaults).
    For beta < 1 that corner argument fails and the minimum is taken over
    a 401x101 grid instead, flagged as method="grid".
    """
    w = _ensure_weights(weights)
    if w.beta >= 1:
        value = min(_FIVE, 1 - w.alpha / 2) - 1 / w.beta - 4 / w.delta
        return RawMinimum(value=value, method="analytic")
    return RawMinimum(value=_grid_minimum(w), method="grid")


def default_scale_range(weights: Weights = DEFAULT_WEIGHTS) -> ScaleRange:
    """Scale range used by `compute`: raw [minimum, 5] onto [1, 5]."""
    return ScaleRange(r_min=analytic_min(weights).value, r_max=_FIVE)


def rescale(raw, scale_range: ScaleRange | None = None, *, tolerance: float = 1e-9) -> Stars:
    """Affinely map ``raw`` from the source interval onto the target one.

    Values outside the source interval by at most ``tolerance`` clamp to
    the nearest endpoint; beyond that a RangeError is raised. Float input
    yields a float, exact input an exact Fraction. Defaults to the
    default-weights range [0.61, 5] -> [1, 5].
    """
    rng = scale_range if scale_range is not None else default_scale_range()
    as_float = isinstance(raw, float)
    if as_float:
        if not math.isfinite(raw):
            raise DomainError(f"raw must be finite, got {raw!r}")
        value = raw
    else:
        value = to_fraction(raw, name="raw")
    if value < rng.r_min:
        if rng.r_min - value > tolerance:
            raise ScaleRangeError(
                f"raw score {format_decimal(value)} is below the scale range "
                f"[{format_decimal(rng.r_min)}, {format_decimal(rng.r_max)}]"
            )
        value = rng.r_min
    elif value > rng.r_max:
        if value - rng.r_max > tolerance:
            raise ScaleRangeError(
                f"raw score {format_decimal(value)} is above the scale range "
                f"[{format_decimal(rng.r_min)}, {format_decimal(rng.r_max)}]"
            )
        value = rng.r_max
    result = (rng.t_max - rng.t_min) * (value - rng.r_min) / (rng.r_max - rng.r_min) + rng.t_min
    if result < rng.t_min:
        result = rng.t_min
    elif result > rng.t_max:
        result = rng.t_max
    return float(result) if as_float else result


def compute(x, y, weights: Weights = DEFAULT_WEIGHTS, *, scaling: bool = True) -> ScoreBreakdown:
    """Float-path evaluation, rescaled onto [1, 5] when ``scaling`` is on."""
    breakdown = compute_raw(x, y, weights)
    if not scaling:
        return breakdown
    scaled = rescale(breakdown.raw, default_scale_range(weights))
    return replace(breakdown, scaled=scaled)


def compute_exact(x: Numeric, y: Numeric, weights: Weights = DEFAULT_WEIGHTS, *, scaling: bool = True) -> ScoreBreakdown:
    """Exact-path evaluation, rescaled onto [1, 5] when ``scaling`` is on."""
    breakdown = compute_raw_exact(x, y, weights)
    if not scaling:
        return breakdown
    scaled = rescale(breakdown.raw, default_scale_range(weights))
    return replace(breakdown, scaled=scaled)
