"""CLI configuration: built-in defaults, optional config file, flag overrides.

Precedence is flags over config file over defaults. The file is plain
``key = value`` lines; recognized keys are alpha, beta, delta, scaling
(on/off) and format (text/csv/json). Unknown keys are rejected so typos
get caught. Blank lines and lines starting with ``#`` are ignored.
``CONTRIP_CONFIG`` may point at the file when no --config flag is given.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ConfigError, DomainError
from .exact import parse_decimal
from .score import DEFAULT_WEIGHTS, Weights

CONFIG_ENV_VAR = "CONTRIP_CONFIG"
OUTPUT_FORMATS = ("text", "csv", "json")
STRICTNESS_MODES = ("strict", "lenient")
_CONFIG_KEYS = ("alpha", "beta", "delta", "scaling", "format")


@dataclass(frozen=True)
class CliConfig:
    """Resolved command-line configuration."""

    weights: Weights = DEFAULT_WEIGHTS
    scaling: bool = True
    output_format: str = "text"
    strictness: str = "strict"


def load_config_file(path: str | Path) -> dict[str, str]:
    """Read a ``key = value`` config file; values come back unparsed."""
    text = Path(path).read_text(encoding="utf-8")
    values: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{line_no}: expected 'key = value', got {stripped!r}")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(
                f"{path}:{line_no}: unknown key {key!r} (known keys: {', '.join(_CONFIG_KEYS)})"
            )
        values[key] = value.strip()
    return values


def _parse_weight(text: str, key: str) -> Fraction:
    try:
        return parse_decimal(text, name=key)
    except DomainError as exc:
        raise ConfigError(f"config key {key}: {exc}") from exc


def _parse_scaling(text: str) -> bool:
    if text == "on":
        return True
    if text == "off":
        return False
    raise ConfigError(f"config key scaling must be 'on' or 'off', got {text!r}")


def _parse_format(text: str) -> str:
    if text not in OUTPUT_FORMATS:
        raise ConfigError(f"config key format must be one of {OUTPUT_FORMATS}, got {text!r}")
    return text


def resolve_config(
    *,
    alpha: Fraction | None = None,
    beta: Fraction | None = None,
    delta: Fraction | None = None,
    scaling: bool | None = None,
    output_format: str | None = None,
    strictness: str | None = None,
    config_path: str | Path | None = None,
) -> CliConfig:
    """Merge already-parsed flag values (None = not given) over the file
    at ``config_path`` (if any) over built-in defaults."""
    file_values = load_config_file(config_path) if config_path else {}

    def pick(flag, key, parse, default):
        if flag is not None:
            return flag
        if key in file_values:
            return parse(file_values[key], key)
        return default

    weights = Weights(
        alpha=pick(alpha, "alpha", _parse_weight, Fraction(1, 2)),
        beta=pick(beta, "beta", _parse_weight, Fraction(10)),
        delta=pick(delta, "delta", _parse_weight, Fraction(100)),
    )
    return CliConfig(
        weights=weights,
        scaling=pick(scaling, "scaling", lambda text, _key: _parse_scaling(text), True),
        output_format=pick(output_format, "format", lambda text, _key: _parse_format(text), "text"),
        strictness=strictness if strictness is not None else "strict",
    )
