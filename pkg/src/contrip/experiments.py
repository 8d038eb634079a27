"""Sweep harness: grid evaluations, the standard four panels, and the
differentiation analysis.

A sweep holds one axis fixed at a few levels and varies the other over a
grid, evaluating the exact path at every (rating, consensus) pair. The
differentiation report then counts how many of those pairs produce
distinct scores at 3-decimal precision, listing every collision group.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Literal

from .errors import DomainError, PrecisionError
from .exact import format_decimal, is_thousandths, thousandths
from .score import (
    DEFAULT_WEIGHTS,
    ScoreBreakdown,
    Weights,
    compute_raw_exact,
    default_scale_range,
    rescale,
)
from .validation import check_consensus_exact, check_rating_exact

SweepMode = Literal["vary-rating", "vary-consensus"]
SWEEP_MODES = ("vary-rating", "vary-consensus")

SWEEP_CSV_HEADER = ("panel", "x", "y", "term1", "term2", "term3", "raw", "scaled")


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: the fixed-axis levels, the varied-axis grid, and how to score.

    ``mode`` names the varied axis. Values normalize to exact Fractions
    (decimal strings parse exactly; floats convert to their binary
    value). The grid must be strictly increasing and inside the varied
    axis domain; fixed values must be nonempty and inside theirs.
    """

    mode: SweepMode
    fixed_values: tuple[Fraction, ...]
    grid: tuple[Fraction, ...]
    scaling: bool = False
    weights: Weights = DEFAULT_WEIGHTS
    label: str = "custom"

    def __post_init__(self):
        if self.mode not in SWEEP_MODES:
            raise DomainError(f"mode must be one of {SWEEP_MODES}, got {self.mode!r}")
        if not isinstance(self.weights, Weights):
            raise TypeError(f"weights must be a Weights instance, got {type(self.weights).__name__}")
        check_varied, check_fixed = (
            (check_rating_exact, check_consensus_exact)
            if self.mode == "vary-rating"
            else (check_consensus_exact, check_rating_exact)
        )
        grid = tuple(
            check_varied(v, name=f"grid[{i}]", allow_float=True) for i, v in enumerate(self.grid)
        )
        fixed = tuple(
            check_fixed(v, name=f"fixed_values[{i}]", allow_float=True)
            for i, v in enumerate(self.fixed_values)
        )
        if not grid:
            raise DomainError("grid must not be empty")
        if not fixed:
            raise DomainError("fixed_values must not be empty")
        if any(a >= b for a, b in zip(grid, grid[1:])):
            raise DomainError("grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "fixed_values", fixed)


@dataclass(frozen=True)
class SweepRow:
    """One evaluated grid point, exact."""

    x: Fraction
    y: Fraction
    term1: Fraction
    term2: Fraction
    term3: Fraction
    raw: Fraction
    scaled: Fraction | None = None


@dataclass(frozen=True)
class CollisionGroup:
    """Grid pairs sharing one 3-decimal raw value, in sweep order."""

    raw: Fraction
    members: tuple[tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class ReferenceCount:
    """A previously reported differentiation to print next to a run's own."""

    n_pairs: int
    n_distinct: int

    @property
    def percent(self) -> float:
        return 100 * self.n_distinct / self.n_pairs


#: Reference differentiation reported for the default six-consensus by
#: 41-rating grid. differentiation_report attaches it whenever it runs on
#: exactly that grid with default weights, so renderers can show both
#: counts when the measured value differs.
DEFAULT_GRID_REFERENCE = ReferenceCount(n_pairs=246, n_distinct=240)


@dataclass(frozen=True)
class DifferentiationReport:
    """Distinct-score count over a grid, at 3-decimal precision."""

    n_pairs: int
    n_distinct: int
    collisions: tuple[CollisionGroup, ...]
    reference: ReferenceCount | None = None

    @property
    def percent(self) -> float:
        return 100 * self.n_distinct / self.n_pairs


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate a sweep; rows ordered fixed values outer, grid inner.

    Every row is a fresh exact evaluation, so outputs are bit-identical
    across runs.
    """
    scale_range = default_scale_range(spec.weights) if spec.scaling else None
    rows: list[SweepRow] = []
    for fixed in spec.fixed_values:
        for varied in spec.grid:
            x, y = (varied, fixed) if spec.mode == "vary-rating" else (fixed, varied)
            breakdown: ScoreBreakdown = compute_raw_exact(x, y, spec.weights)
            scaled = rescale(breakdown.raw, scale_range) if scale_range is not None else None
            rows.append(
                SweepRow(
                    x=x,
                    y=y,
                    term1=breakdown.term1,
                    term2=breakdown.term2,
                    term3=breakdown.term3,
                    raw=breakdown.raw,
                    scaled=scaled,
                )
            )
    return rows


def default_panel_specs() -> dict[str, SweepSpec]:
    """The four standard sweeps, keyed "A" through "D".

    A and C fix six consensus levels (0 to 1, step 0.2) and vary the
    rating over 41 points (1.0 to 5.0, step 0.1). B and D fix the five
    integer ratings and vary consensus over 50 evenly spaced points from
    0 to 1 inclusive. A and B are unscaled; C and D are scaled.
    """
    rating_grid = tuple(Fraction(10 + i, 10) for i in range(41))
    consensus_grid = tuple(Fraction(i, 49) for i in range(50))
    consensus_levels = tuple(Fraction(i, 5) for i in range(6))
    rating_levels = tuple(Fraction(i) for i in range(1, 6))
    panel_a = SweepSpec(
        mode="vary-rating",
        fixed_values=consensus_levels,
        grid=rating_grid,
        scaling=False,
        label="A",
    )
    panel_b = SweepSpec(
        mode="vary-consensus",
        fixed_values=rating_levels,
        grid=consensus_grid,
        scaling=False,
        label="B",
    )
    return {
        "A": panel_a,
        "B": panel_b,
        "C": replace(panel_a, scaling=True, label="C"),
        "D": replace(panel_b, scaling=True, label="D"),
    }


def _matches_default_grid(spec: SweepSpec) -> bool:
    panel_a = default_panel_specs()["A"]
    return (
        spec.mode == panel_a.mode
        and spec.grid == panel_a.grid
        and spec.fixed_values == panel_a.fixed_values
        and spec.weights == panel_a.weights
    )


def differentiation_report(spec: SweepSpec) -> DifferentiationReport:
    """Count distinct 3-decimal raw scores over the sweep's (x, y) pairs.

    Every grid and fixed value must be an exact multiple of 0.001;
    otherwise 3-decimal equality would hinge on rounding artifacts and a
    PrecisionError is raised (for such grids, compare floating scores
    with an explicit epsilon instead). Collision groups are listed in
    ascending raw order.
    """
    for kind, values in (("grid", spec.grid), ("fixed_values", spec.fixed_values)):
        for i, value in enumerate(values):
            if not is_thousandths(value):
                raise PrecisionError(
                    f"{kind}[{i}] = {value} is not a multiple of 0.001; exact 3-decimal "
                    "differentiation needs a thousandths grid (for other grids, compare "
                    "floating scores with an explicit epsilon)"
                )
    rows = run_sweep(spec)
    groups: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for row in rows:
        groups.setdefault(thousandths(row.raw), []).append((row.x, row.y))
    collisions = tuple(
        CollisionGroup(raw=Fraction(key, 1000), members=tuple(members))
        for key, members in sorted(groups.items())
        if len(members) > 1
    )
    return DifferentiationReport(
        n_pairs=len(rows),
        n_distinct=len(groups),
        collisions=collisions,
        reference=DEFAULT_GRID_REFERENCE if _matches_default_grid(spec) else None,
    )


def emit_sweep_csv(rows: Iterable[SweepRow], destination: str | Path | IO[str], *, label: str = "custom") -> int:
    """Write sweep rows as CSV; returns the number of data rows written.

    Header ``panel,x,y,term1,term2,term3,raw,scaled``; values at 3
    decimals, ``scaled`` empty when unscaled, LF line endings.
    ``destination`` is a path or a writable text object.
    """
    if hasattr(destination, "write"):
        return _write_rows(rows, destination, label)
    with open(destination, "w", encoding="utf-8", newline="") as handle:
        return _write_rows(rows, handle, label)


def _write_rows(rows: Iterable[SweepRow], handle: IO[str], label: str) -> int:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    count = 0
    for row in rows:
        writer.writerow(
            [
                label,
                format_decimal(row.x),
                format_decimal(row.y),
                format_decimal(row.term1),
                format_decimal(row.term2),
                format_decimal(row.term3),
                format_decimal(row.raw),
                "" if row.scaled is None else format_decimal(row.scaled),
            ]
        )
        count += 1
    return count
