"""Exception types shared across the package."""


class ContripError(Exception):
    """Base class for every error this package raises on purpose."""


class DomainError(ContripError, ValueError):
    """An input value lies outside its legal domain (or is not a number)."""


class EmptyInputError(ContripError, ValueError):
    """An aggregate was requested over an empty collection."""


class RangeError(ContripError, ValueError):
    """A value to be rescaled lies outside the source range beyond tolerance."""


class DegenerateRangeError(ContripError, ValueError):
    """A scale range has zero width."""


class PrecisionError(ContripError, ValueError):
    """A grid is not representable in thousandths, so exact 3-decimal
    equality is undefined for it."""


class IngestError(ContripError, ValueError):
    """A reviews CSV could not be parsed; carries the offending line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class ConfigError(ContripError, ValueError):
    """A configuration file is malformed or names an unknown key."""
