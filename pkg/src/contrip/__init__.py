"""Consensus-fused review scoring.

Blend an item's overall star rating with a review-consensus value into a
single interpretable score on the rating scale, aggregate raw reviews
into those two inputs, and reproduce the standard sweep and
differentiation analyses. See the README for the CLI and file formats.
"""

from .aggregate import (
    ItemAggregate,
    ReviewRecord,
    aggregate_items,
    aggregate_rating,
    estimate_consensus,
)
from .errors import (
    ConfigError,
    ContripError,
    DegenerateRangeError,
    DomainError,
    EmptyInputError,
    IngestError,
    PrecisionError,
    RangeError,
)
from .experiments import (
    DEFAULT_GRID_REFERENCE,
    CollisionGroup,
    DifferentiationReport,
    ReferenceCount,
    SweepRow,
    SweepSpec,
    default_panel_specs,
    differentiation_report,
    emit_sweep_csv,
    run_sweep,
)
from .reviews import ReviewsFile, SkippedRow, read_reviews_csv
from .score import (
    DEFAULT_WEIGHTS,
    RawMinimum,
    ScaleRange,
    ScoreBreakdown,
    Weights,
    analytic_min,
    compute,
    compute_exact,
    compute_raw,
    compute_raw_exact,
    default_scale_range,
    rescale,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # scoring
    "Weights",
    "DEFAULT_WEIGHTS",
    "ScoreBreakdown",
    "ScaleRange",
    "RawMinimum",
    "compute",
    "compute_exact",
    "compute_raw",
    "compute_raw_exact",
    "analytic_min",
    "default_scale_range",
    "rescale",
    # aggregation
    "ReviewRecord",
    "ItemAggregate",
    "aggregate_rating",
    "estimate_consensus",
    "aggregate_items",
    "read_reviews_csv",
    "ReviewsFile",
    "SkippedRow",
    # experiments
    "SweepSpec",
    "SweepRow",
    "run_sweep",
    "default_panel_specs",
    "differentiation_report",
    "DifferentiationReport",
    "CollisionGroup",
    "ReferenceCount",
    "DEFAULT_GRID_REFERENCE",
    "emit_sweep_csv",
    # sklearn wrapper (lazy import)
    "ContripScorer",
    # errors
    "ContripError",
    "DomainError",
    "EmptyInputError",
    "RangeError",
    "DegenerateRangeError",
    "PrecisionError",
    "IngestError",
    "ConfigError",
]


def __getattr__(name):
    # numpy/sklearn load lazily so the CLI stays snappy
    if name == "ContripScorer":
        from .estimators import ContripScorer

        return ContripScorer
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
