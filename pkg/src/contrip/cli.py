"""Command-line interface: ``score``, ``ingest``, ``sweep``, ``differentiate``.

Exit codes: 0 success, 2 usage or configuration errors, 3 domain,
precision or data-validation errors, 4 I/O failures. Diagnostics go to
stderr; results go to stdout.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import signal
import sys
from dataclasses import replace
from fractions import Fraction

import click

from .aggregate import ItemAggregate, aggregate_items
from .config import CONFIG_ENV_VAR, OUTPUT_FORMATS, CliConfig, resolve_config
from .errors import (
    ConfigError,
    DegenerateRangeError,
    DomainError,
    EmptyInputError,
    IngestError,
    PrecisionError,
    RangeError,
)
from .exact import format_decimal, parse_decimal, round_float
from .experiments import (
    DifferentiationReport,
    SweepSpec,
    default_panel_specs,
    differentiation_report,
    emit_sweep_csv,
    run_sweep,
)
from .reviews import read_reviews_csv
from .score import ScoreBreakdown, compute_exact

EXIT_DOMAIN = 3
EXIT_IO = 4

_DOMAIN_ERRORS = (
    DomainError,
    EmptyInputError,
    RangeError,
    DegenerateRangeError,
    PrecisionError,
    IngestError,
)


class DecimalParam(click.ParamType):
    """Flag parsed as an exact, finite decimal literal."""

    name = "decimal"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_decimal(str(value), name=param.name if param else "value")
        except DomainError as exc:
            self.fail(str(exc), param, ctx)


DECIMAL = DecimalParam()


def handles_errors(f):
    """Map package errors onto the documented exit codes."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ConfigError as exc:
            raise click.UsageError(str(exc)) from exc
        except _DOMAIN_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_DOMAIN)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_IO)

    return wrapper


def weight_options(f):
    f = click.option("--delta", type=DECIMAL, default=None, metavar="DECIMAL",
                     help="Differentiation-offset divisor (default 100).")(f)
    f = click.option("--beta", type=DECIMAL, default=None, metavar="DECIMAL",
                     help="Disagreement-penalty divisor (default 10).")(f)
    f = click.option("--alpha", type=DECIMAL, default=None, metavar="DECIMAL",
                     help="Consensus-adjustment coefficient (default 0.5).")(f)
    return f


def scale_option(f):
    return click.option("--scale/--no-scale", "scaling", default=None,
                        help="Rescale scores onto [1, 5] (default on).")(f)


def format_option(f):
    return click.option("--format", "output_format", type=click.Choice(OUTPUT_FORMATS),
                        default=None, help="Output format (default text).")(f)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", metavar="PATH", default=None, envvar=CONFIG_ENV_VAR,
              help=f"Config file with 'key = value' lines; ${CONFIG_ENV_VAR} is used when absent.")
@click.pass_context
def main(ctx, config_path):
    """Blend star ratings with review-consensus values into one score."""
    ctx.obj = {"config_path": config_path}


def _resolved(ctx, **overrides) -> CliConfig:
    return resolve_config(config_path=ctx.obj["config_path"], **overrides)


@main.command()
@click.option("--rating", type=DECIMAL, required=True, help="Overall star rating, 1 to 5.")
@click.option("--consensus", type=DECIMAL, required=True, help="Review agreement, 0 to 1.")
@weight_options
@scale_option
@format_option
@click.pass_context
@handles_errors
def score(ctx, rating, consensus, alpha, beta, delta, scaling, output_format):
    """Score one (rating, consensus) pair and print the term breakdown."""
    cfg = _resolved(ctx, alpha=alpha, beta=beta, delta=delta, scaling=scaling,
                    output_format=output_format)
    breakdown = compute_exact(rating, consensus, cfg.weights, scaling=cfg.scaling)
    _render_breakdown(rating, consensus, breakdown, cfg.output_format)


def _breakdown_fields(x, y, breakdown: ScoreBreakdown):
    return [
        ("x", x),
        ("y", y),
        ("term1", breakdown.term1),
        ("term2", breakdown.term2),
        ("term3", breakdown.term3),
        ("raw", breakdown.raw),
        ("scaled", breakdown.scaled),
    ]


def _render_breakdown(x, y, breakdown: ScoreBreakdown, output_format: str) -> None:
    fields = _breakdown_fields(x, y, breakdown)
    if output_format == "text":
        for name, value in fields:
            if name in ("x", "y") or value is None:
                continue
            click.echo(f"{name:<7}{format_decimal(value)}")
    elif output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([name for name, _ in fields])
        writer.writerow(["" if v is None else format_decimal(v) for _, v in fields])
        click.echo(buffer.getvalue(), nl=False)
    else:
        payload = {name: (None if v is None else round_float(v)) for name, v in fields}
        click.echo(json.dumps(payload, indent=2))


@main.command()
@click.argument("path", metavar="REVIEWS_CSV")
@click.option("--strict/--lenient", "strict", default=None,
              help="Abort on the first bad row (default) or skip bad rows.")
@weight_options
@scale_option
@format_option
@click.pass_context
@handles_errors
def ingest(ctx, path, strict, alpha, beta, delta, scaling, output_format):
    """Aggregate a reviews CSV and score every item."""
    strictness = None if strict is None else ("strict" if strict else "lenient")
    cfg = _resolved(ctx, alpha=alpha, beta=beta, delta=delta, scaling=scaling,
                    output_format=output_format, strictness=strictness)
    parsed = read_reviews_csv(path, strict=cfg.strictness == "strict")
    if parsed.skipped:
        click.echo(f"warning: skipped {len(parsed.skipped)} bad row(s)", err=True)
    items = aggregate_items(parsed.records)
    scored = [
        (item, compute_exact(item.overall_rating, item.consensus, cfg.weights, scaling=cfg.scaling))
        for item in items
    ]
    _render_items(scored, cfg.output_format)


_ITEM_COLUMNS = ("item_id", "n_reviews", "x", "y", "raw", "scaled")


def _item_values(item: ItemAggregate, breakdown: ScoreBreakdown):
    return (
        item.item_id,
        item.n_reviews,
        item.overall_rating,
        item.consensus,
        breakdown.raw,
        breakdown.scaled,
    )


def _render_items(scored, output_format: str) -> None:
    if output_format == "text":
        click.echo(f"{'item_id':<20}{'n_reviews':>10}{'x':>8}{'y':>8}{'raw':>8}{'scaled':>8}")
        for item, breakdown in scored:
            scaled = "" if breakdown.scaled is None else format_decimal(breakdown.scaled)
            click.echo(
                f"{item.item_id:<20}{item.n_reviews:>10}"
                f"{format_decimal(item.overall_rating):>8}{format_decimal(item.consensus):>8}"
                f"{format_decimal(breakdown.raw):>8}{scaled:>8}"
            )
    elif output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(_ITEM_COLUMNS)
        for item, breakdown in scored:
            item_id, n_reviews, x, y, raw, scaled = _item_values(item, breakdown)
            writer.writerow(
                [
                    item_id,
                    n_reviews,
                    format_decimal(x),
                    format_decimal(y),
                    format_decimal(raw),
                    "" if scaled is None else format_decimal(scaled),
                ]
            )
        click.echo(buffer.getvalue(), nl=False)
    else:
        payload = []
        for item, breakdown in scored:
            item_id, n_reviews, x, y, raw, scaled = _item_values(item, breakdown)
            payload.append(
                {
                    "item_id": item_id,
                    "n_reviews": n_reviews,
                    "x": round_float(x),
                    "y": round_float(y),
                    "raw": round_float(raw),
                    "scaled": None if scaled is None else round_float(scaled),
                }
            )
        click.echo(json.dumps(payload, indent=2))


def _parse_value_list(text: str, flag: str) -> tuple[Fraction, ...]:
    tokens = [token.strip() for token in text.split(",") if token.strip()]
    if not tokens:
        raise click.UsageError(f"{flag} needs at least one value")
    try:
        return tuple(parse_decimal(token, name=flag) for token in tokens)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc


def _build_spec(panel, vary, fixed_text, grid_text, scaling_flag, cfg: CliConfig) -> SweepSpec:
    custom_flags = [vary, fixed_text, grid_text]
    if panel is not None:
        if any(flag is not None for flag in custom_flags):
            raise click.UsageError("--panel conflicts with --vary/--fixed/--grid")
        if scaling_flag is not None:
            raise click.UsageError("--panel defines scaling; drop --scale/--no-scale")
        spec = default_panel_specs()[panel.upper()]
        return replace(spec, weights=cfg.weights)
    if any(flag is None for flag in custom_flags):
        raise click.UsageError("custom sweeps need --vary, --fixed and --grid (or use --panel)")
    return SweepSpec(
        mode=f"vary-{vary}",
        fixed_values=_parse_value_list(fixed_text, "--fixed"),
        grid=_parse_value_list(grid_text, "--grid"),
        scaling=cfg.scaling,
        weights=cfg.weights,
        label="custom",
    )


@main.command()
@click.option("--panel", type=click.Choice(["A", "B", "C", "D"], case_sensitive=False),
              default=None, help="One of the standard panels.")
@click.option("--vary", type=click.Choice(["rating", "consensus"]), default=None,
              help="Varied axis of a custom sweep.")
@click.option("--fixed", "fixed_text", metavar="LIST", default=None,
              help="Comma-separated fixed-axis values.")
@click.option("--grid", "grid_text", metavar="LIST", default=None,
              help="Comma-separated varied-axis values, strictly increasing.")
@weight_options
@scale_option
@click.option("--out", "out_path", metavar="PATH", required=True, help="Destination CSV path.")
@click.pass_context
@handles_errors
def sweep(ctx, panel, vary, fixed_text, grid_text, alpha, beta, delta, scaling, out_path):
    """Write a sweep CSV for a standard panel or a custom grid."""
    cfg = _resolved(ctx, alpha=alpha, beta=beta, delta=delta, scaling=scaling)
    spec = _build_spec(panel, vary, fixed_text, grid_text, scaling, cfg)
    rows = run_sweep(spec)
    count = emit_sweep_csv(rows, out_path, label=spec.label)
    click.echo(f"wrote {count} data rows to {out_path}")


@main.command()
@click.option("--vary", type=click.Choice(["rating", "consensus"]), default=None,
              help="Varied axis of a custom grid (default: the standard rating sweep).")
@click.option("--fixed", "fixed_text", metavar="LIST", default=None,
              help="Comma-separated fixed-axis values.")
@click.option("--grid", "grid_text", metavar="LIST", default=None,
              help="Comma-separated varied-axis values, strictly increasing.")
@weight_options
@format_option
@click.pass_context
@handles_errors
def differentiate(ctx, vary, fixed_text, grid_text, alpha, beta, delta, output_format):
    """Report how many grid pairs score distinctly at 3 decimals."""
    cfg = _resolved(ctx, alpha=alpha, beta=beta, delta=delta, output_format=output_format)
    custom_flags = [vary, fixed_text, grid_text]
    if any(flag is not None for flag in custom_flags):
        if any(flag is None for flag in custom_flags):
            raise click.UsageError("custom grids need --vary, --fixed and --grid together")
        spec = SweepSpec(
            mode=f"vary-{vary}",
            fixed_values=_parse_value_list(fixed_text, "--fixed"),
            grid=_parse_value_list(grid_text, "--grid"),
            scaling=False,
            weights=cfg.weights,
            label="custom",
        )
    else:
        spec = replace(default_panel_specs()["A"], weights=cfg.weights)
    report = differentiation_report(spec)
    _render_report(report, cfg.output_format)


def _percent_text(n_distinct: int, n_pairs: int) -> str:
    return format_decimal(Fraction(100 * n_distinct, n_pairs), 1)


def _render_report(report: DifferentiationReport, output_format: str) -> None:
    percent = _percent_text(report.n_distinct, report.n_pairs)
    if output_format == "text":
        click.echo(f"{report.n_pairs} pairs, {report.n_distinct} distinct, {percent}%")
        if report.reference is not None and report.reference.n_distinct != report.n_distinct:
            ref = report.reference
            click.echo(
                f"note: reference for this grid is {ref.n_distinct} distinct of {ref.n_pairs} "
                f"({_percent_text(ref.n_distinct, ref.n_pairs)}%); this run measured "
                f"{report.n_distinct} ({percent}%)"
            )
        if report.collisions:
            click.echo("collisions:")
            for group in report.collisions:
                members = ", ".join(
                    f"({format_decimal(x)}, {format_decimal(y)})" for x, y in group.members
                )
                click.echo(f"  raw {format_decimal(group.raw)}: {members}")
    elif output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n_pairs", "n_distinct", "percent", "group", "raw", "x", "y"])
        summary = [report.n_pairs, report.n_distinct, percent]
        if not report.collisions:
            writer.writerow(summary + ["", "", "", ""])
        for index, group in enumerate(report.collisions, start=1):
            for x, y in group.members:
                writer.writerow(
                    summary + [index, format_decimal(group.raw), format_decimal(x), format_decimal(y)]
                )
        click.echo(buffer.getvalue(), nl=False)
    else:
        payload = {
            "n_pairs": report.n_pairs,
            "n_distinct": report.n_distinct,
            "percent": float(percent),
            "reference": None
            if report.reference is None
            else {
                "n_pairs": report.reference.n_pairs,
                "n_distinct": report.reference.n_distinct,
                "percent": float(_percent_text(report.reference.n_distinct, report.reference.n_pairs)),
            },
            "collisions": [
                {
                    "raw": round_float(group.raw),
                    "members": [[round_float(x), round_float(y)] for x, y in group.members],
                }
                for group in report.collisions
            ],
        }
        click.echo(json.dumps(payload, indent=2))


def entrypoint():
    """Console-script entry: die quietly when the output pipe closes."""
    if hasattr(signal, "SIGPIPE"):
        signal.signal(signal.SIGPIPE, signal.SIG_DFL)
    main()


if __name__ == "__main__":
    entrypoint()
