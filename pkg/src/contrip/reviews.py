"""Reviews CSV parsing: ``item_id,rating,polarity`` rows into records.

The format is deliberately rigid: UTF-8, comma delimiter, ``.`` decimal
point, LF line endings, and exactly that header. Strict mode aborts at
the first bad row; lenient mode collects skips so callers can report a
count. Line numbers are 1-based file lines (the header is line 1).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import IO

from .aggregate import ReviewRecord, validate_record
from .errors import DomainError, IngestError
from .exact import parse_decimal

REVIEWS_CSV_HEADER = ("item_id", "rating", "polarity")


@dataclass(frozen=True)
class SkippedRow:
    line: int
    reason: str


@dataclass(frozen=True)
class ReviewsFile:
    """Parse result: valid records plus whatever lenient mode skipped."""

    records: list[ReviewRecord]
    skipped: list[SkippedRow]


def read_reviews_csv(source: str | Path | IO[str], *, strict: bool = True) -> ReviewsFile:
    """Parse a reviews CSV from a path or a readable text object.

    Raises IngestError (with the line number) on a bad header, or on the
    first bad row in strict mode. I/O failures propagate as OSError.
    """
    if hasattr(source, "read"):
        return _read(source, strict)
    with open(source, "r", encoding="utf-8", newline="") as handle:
        return _read(handle, strict)


def _read(handle: IO[str], strict: bool) -> ReviewsFile:
    reader = csv.reader(handle)
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError(1, "missing header; expected 'item_id,rating,polarity'") from None
    if tuple(header) != REVIEWS_CSV_HEADER:
        raise IngestError(
            reader.line_num, f"bad header {','.join(header)!r}; expected 'item_id,rating,polarity'"
        )

    records: list[ReviewRecord] = []
    skipped: list[SkippedRow] = []

    def bad_row(line: int, reason: str) -> None:
        if strict:
            raise IngestError(line, reason)
        skipped.append(SkippedRow(line=line, reason=reason))

    for row in reader:
        line = reader.line_num
        if not row:
            bad_row(line, "blank line")
            continue
        if len(row) != 3:
            bad_row(line, f"expected 3 fields, got {len(row)}")
            continue
        item_id, rating_text, polarity_text = row
        try:
            record = ReviewRecord(
                item_id=item_id,
                rating=parse_decimal(rating_text, name="rating"),
                polarity=parse_decimal(polarity_text, name="polarity"),
            )
            validate_record(record)
        except DomainError as exc:
            bad_row(line, str(exc))
            continue
        records.append(record)
    return ReviewsFile(records=records, skipped=skipped)
