"""Per-item aggregation of raw review records.

Ratings aggregate as a plain arithmetic mean. Consensus is estimated
from sentiment polarities as ``1 - 2 * MAD``, where MAD is the mean
absolute deviation around the mean polarity: zero dispersion means total
agreement (1.0) and a maximal 0/1 split means none (0.0). The estimator
is parameter-free, bounded and permutation invariant.

All arithmetic is exact rational, so "all polarities equal" yields
consensus 1 exactly (never 0.999...) and results do not depend on input
order. Floats on input convert to their exact binary values; call
``float()`` on results for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DomainError, EmptyInputError
from .exact import Numeric
from .validation import check_consensus_exact, check_rating_exact


@dataclass(frozen=True)
class ReviewRecord:
    """One review. A plain carrier: validated where it is consumed."""

    item_id: str
    rating: Numeric
    polarity: Numeric


@dataclass(frozen=True)
class ItemAggregate:
    """Per-item inputs for scoring: mean rating and estimated consensus."""

    item_id: str
    n_reviews: int
    overall_rating: Fraction
    consensus: Fraction


def validate_record(record: ReviewRecord) -> tuple[Fraction, Fraction]:
    """Check one record's fields; returns (rating, polarity) exactly."""
    item_id = getattr(record, "item_id", None)
    if not isinstance(item_id, str) or not item_id:
        raise DomainError("item_id must be a nonempty string")
    rating = check_rating_exact(record.rating, name="rating", allow_float=True)
    polarity = check_consensus_exact(record.polarity, name="polarity", allow_float=True)
    return rating, polarity


def aggregate_rating(ratings: Sequence[Numeric]) -> Fraction:
    """Arithmetic mean of star ratings, exact.

    Raises EmptyInputError on an empty list and DomainError naming the
    index of any out-of-range element.
    """
    values = list(ratings)
    if not values:
        raise EmptyInputError("no ratings to aggregate")
    exact = [
        check_rating_exact(v, name=f"ratings[{i}]", allow_float=True)
        for i, v in enumerate(values)
    ]
    return sum(exact, Fraction(0)) / len(exact)


def estimate_consensus(polarities: Sequence[Numeric]) -> Fraction:
    """Agreement of sentiment polarities: ``1 - 2 * MAD``.

    For values in [0, 1] the mean absolute deviation is at most 1/2, so
    the result stays in [0, 1]; it equals 1 exactly when (and only when)
    all polarities are equal, including single-element lists.
    """
    values = list(polarities)
    if not values:
        raise EmptyInputError("no polarities to aggregate")
    exact = [
        check_consensus_exact(v, name=f"polarities[{i}]", allow_float=True)
        for i, v in enumerate(values)
    ]
    mean = sum(exact, Fraction(0)) / len(exact)
    mad = sum((abs(v - mean) for v in exact), Fraction(0)) / len(exact)
    return 1 - 2 * mad


def aggregate_items(
    records: Iterable[ReviewRecord],
    *,
    strict: bool = True,
    on_skip: Callable[[int, str], None] | None = None,
) -> list[ItemAggregate]:
    """Fold a record stream into one aggregate per item.

    In strict mode the first invalid record aborts with its 1-based
    position in the stream and the reason. In lenient mode invalid
    records are skipped and ``on_skip(position, reason)`` is called for
    each skip. Output is deterministic regardless of input order: one
    aggregate per distinct item id, sorted by UTF-8 byte order.
    """
    buckets: dict[str, tuple[list[Fraction], list[Fraction]]] = {}
    for position, record in enumerate(records, start=1):
        try:
            rating, polarity = validate_record(record)
        except DomainError as exc:
            if strict:
                raise DomainError(f"record {position}: {exc}") from exc
            if on_skip is not None:
                on_skip(position, str(exc))
            continue
        ratings, polarities = buckets.setdefault(record.item_id, ([], []))
        ratings.append(rating)
        polarities.append(polarity)
    return [
        ItemAggregate(
            item_id=item_id,
            n_reviews=len(buckets[item_id][0]),
            overall_rating=aggregate_rating(buckets[item_id][0]),
            consensus=estimate_consensus(buckets[item_id][1]),
        )
        for item_id in sorted(buckets, key=lambda s: s.encode("utf-8"))
    ]
