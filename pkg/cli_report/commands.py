"""The `rankdrift` command group.

Every command writes its result to stdout. Failures become one JSON error
record on stderr: exit status 1 for data and computation errors, 2 for
usage errors. Status 0 means no error record was written.
"""
import functools
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, Optional

import click

from config import APP_VERSION, Config, get_config
from f1_model import Entity, SeriesMethod
from ingest import load_season_manifest, parse_standings_matrix
from utilities.errors import SCHEMA_VERSION, DataError, ParseError, RankdriftError
from utilities.logger import setup_logger

from .exports import dumps_json, dumps_record, generate_csv, generate_excel, generate_text, generate_tsv
from .reports import (
    NS_COLUMNS,
    PLOT_COLUMNS,
    SUMMARY_COLUMNS,
    compare_report,
    flatten_table,
    plot_rows,
    published_lookup,
    ranking_table,
    season_ns_report,
    significance_report,
    standings_ns_report,
    summary_report,
)
from .rows import read_report_rows
from .schema import SCHEMA_NAMES, build_schemas

log = logging.getLogger(__name__)

FILE = click.Path(dir_okay=False, path_type=Path)


# --- Errors -----------------------------------------------------------------

def emit_error(record: Dict[str, Any]) -> None:
    click.echo(dumps_record(record), err=True)


def reports_errors(f):
    """Turn a RankdriftError into a JSON error record and exit status 1."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except RankdriftError as e:
            log.debug("%s failed", f.__name__, exc_info=True)
            emit_error(e.to_record())
            sys.exit(1)

    return wrapper


class ReportingGroup(click.Group):
    """Click group that also writes usage errors as JSON error records."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            emit_error({
                "schema_version": SCHEMA_VERSION,
                "error": {"code": "usage_error", "message": e.format_message()},
            })
            raise


# --- File helpers -----------------------------------------------------------

def _read_bytes(path: Path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise DataError(f"Cannot read {path}: {e.strerror or e}", {"path": str(path)})


def _write_text(path: Path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as e:
        raise DataError(f"Cannot write {path}: {e.strerror or e}", {"path": str(path)})


def _published(config) -> Dict:
    """Published NS values shipped under DATA_DIR, keyed by (series, year)."""
    paths = [Path(config.DATA_DIR) / name for name in config.PUBLISHED_NS_FILES]
    present = [p for p in paths if p.is_file()]
    if not present:
        log.info("No published NS files under %s; published_ns left empty", config.DATA_DIR)
        return {}
    return published_lookup(read_report_rows(present))


# --- Group ------------------------------------------------------------------

@click.group(cls=ReportingGroup)
@click.version_option(APP_VERSION, prog_name="rankdrift")
@click.option("-v", "--verbose", count=True, help="More log output on stderr (-vv for debug).")
@click.pass_context
def cli(ctx, verbose):
    """Competitive balance of ranking series via the Kendall evolutive coefficient and NS."""
    config = get_config()
    level = max(logging.DEBUG, config.LOG_LEVEL - 10 * verbose)
    setup_logger(None, config.LOG_FILE, level)
    ctx.obj = config


# --- ns ---------------------------------------------------------------------

@cli.command("ns")
@click.option("--manifest", "manifests", multiple=True, type=FILE,
              help="Season manifest JSON. Repeat to process several seasons.")
@click.option("--standings", type=FILE, help="Standings matrix CSV, one column per matchday.")
@click.option("--series", "series_name", help="Series name for --standings (e.g. laliga).")
@click.option("--year", type=int, help="Season year for --standings.")
@click.option("--entity", type=click.Choice([e.value for e in Entity]),
              help="Rank drivers or constructors. Defaults to the manifest's entity.")
@click.option("--method", type=click.Choice(["m1", "m2"]), default="m1", show_default=True,
              help="Constructor ranking: zero-score teams tied last (m1) or absent (m2).")
@click.option("--penalty", type=click.FloatRange(0.0, 0.5), envvar="RANKDRIFT_PENALTY",
              default=Config.DEFAULT_PENALTY, show_default=True, show_envvar=True,
              help="Penalty p for pairs tied in exactly one ranking.")
@click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--details", is_flag=True, help="Include per-pair coefficients (json only).")
@click.pass_obj
@reports_errors
def ns_command(config, manifests, standings, series_name, year, entity, method, penalty, output_format, details):
    """Normalized Strength of one or more seasons."""
    if bool(manifests) == bool(standings):
        raise click.UsageError("Give either --manifest (one or more) or --standings.")
    published = _published(config)

    if standings:
        if not series_name or year is None:
            raise click.UsageError("--standings needs --series and --year.")
        try:
            series = parse_standings_matrix(_read_bytes(standings))
        except ParseError as e:
            raise e.with_path(str(standings))
        reports = [standings_ns_report(series, series_name, year, penalty, published, config.NS_FLAG_TOLERANCE)]
    else:
        def run(path):
            season = load_season_manifest(path, config.MAX_WORKERS)
            chosen = Entity(entity or season.entity)
            series_method = SeriesMethod(method) if chosen is Entity.CONSTRUCTORS else SeriesMethod.DRIVERS
            return season_ns_report(season, series_method, penalty, published, config.NS_FLAG_TOLERANCE)

        # map() re-raises the first failure; output order never depends on completion order
        with ThreadPoolExecutor(max_workers=config.MAX_WORKERS) as pool:
            reports = sorted(pool.map(run, manifests), key=lambda r: r.sort_key)

    if output_format == "csv":
        click.echo(generate_csv([r.to_row() for r in reports], NS_COLUMNS), nl=False)
    else:
        click.echo(dumps_json({
            "schema_version": SCHEMA_VERSION,
            "penalty": penalty,
            "reports": [r.to_dict(details) for r in reports],
        }), nl=False)


# --- summary ----------------------------------------------------------------

@cli.command("summary")
@click.argument("rows_files", nargs=-1, required=True, type=FILE)
@click.option("--group-by", default="series", show_default=True, help="Comma-separated grouping columns.")
@click.option("--plot-data", type=FILE,
              help="Write five-number summaries as TSV for box plots; '-' prints them instead of the summary.")
@click.option("--xlsx", "xlsx_path", type=FILE, help="Also write the summary to an .xlsx workbook.")
@click.option("--format", "output_format", type=click.Choice(["json", "csv", "text"]), default="json",
              show_default=True)
@click.pass_obj
@reports_errors
def summary_command(config, rows_files, group_by, plot_data: Optional[Path], xlsx_path, output_format):
    """Mean, sample std and quartiles of NS per group."""
    columns = [c.strip() for c in group_by.split(",") if c.strip()]
    if not columns:
        raise click.UsageError("--group-by needs at least one column.")
    groups = summary_report(read_report_rows(rows_files), columns)

    if xlsx_path is not None:
        try:
            generate_excel(groups, xlsx_path, title="NS summary")
        except OSError as e:
            raise DataError(f"Cannot write {xlsx_path}: {e.strerror or e}", {"path": str(xlsx_path)})

    if plot_data is not None:
        tsv = generate_tsv(plot_rows(groups), PLOT_COLUMNS)
        if str(plot_data) == "-":
            click.echo(tsv, nl=False)
            return
        _write_text(plot_data, tsv)

    if output_format == "csv":
        click.echo(generate_csv(groups, SUMMARY_COLUMNS), nl=False)
    elif output_format == "text":
        click.echo(generate_text(groups, SUMMARY_COLUMNS), nl=False)
    else:
        click.echo(dumps_json({"schema_version": SCHEMA_VERSION, "group_by": columns, "groups": groups}), nl=False)


# --- tests ------------------------------------------------------------------

@cli.command("tests")
@click.argument("rows_files", nargs=-1, required=True, type=FILE)
@click.option("--format", "output_format", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.pass_obj
@reports_errors
def tests_command(config, rows_files, output_format):
    """Normality and mean-comparison tests over the drivers, m1 and m2 series."""
    report = significance_report(read_report_rows(rows_files), config.ALPHA, config.VARIANCE_RATIO_LIMIT)

    if output_format == "text":
        lines = [
            {
                "test": t["name"],
                "samples": " vs ".join(t["samples"]),
                "statistic": t["statistic"],
                "p_value": t["p_value"],
                "df": t["df"],
                "reject_null": "yes" if t["reject_null"] else "no",
            }
            for t in report["tests"]
        ]
        click.echo(generate_text(lines, ["test", "samples", "statistic", "p_value", "df", "reject_null"]), nl=False)
        gate = report["variance_ratio"]
        if gate["ratio"] is not None:
            click.echo(f"variance ratio m1/drivers: {gate['ratio']:.4f} (limit {gate['limit']:g})")
        for note in report["notes"]:
            click.echo(f"note: {note}")
    else:
        click.echo(dumps_json(report), nl=False)

    for err in report["errors"]:
        details = {**(err.get("details") or {}), "test": err["name"], "samples": err["samples"]}
        emit_error({
            "schema_version": SCHEMA_VERSION,
            "error": {"code": err["code"], "message": err["message"], "details": details},
        })
    if report["errors"]:
        sys.exit(1)


# --- compare ----------------------------------------------------------------

@cli.command("compare")
@click.option("--f1", "f1_files", multiple=True, required=True, type=FILE, help="F1 NS rows (repeatable).")
@click.option("--football", "football_files", multiple=True, required=True, type=FILE,
              help="Football NS rows (repeatable).")
@click.option("--format", "output_format", type=click.Choice(["json", "text"]), default="json", show_default=True)
@reports_errors
def compare_command(f1_files, football_files, output_format):
    """Ratio of mean F1 NS to mean football NS, per series pairing."""
    report = compare_report(read_report_rows(f1_files), read_report_rows(football_files))
    if output_format == "text":
        click.echo(generate_text(report["ratios"], ["f1", "football", "ratio"]), nl=False)
    else:
        click.echo(dumps_json(report), nl=False)


# --- table ------------------------------------------------------------------

@cli.command("table")
@click.option("--manifest", required=True, type=FILE, help="Season manifest JSON.")
@click.option("--entity", type=click.Choice([e.value for e in Entity]),
              help="Drivers or constructors. Defaults to the manifest's entity.")
@click.option("--format", "output_format", type=click.Choice(["text", "csv", "json"]), default="text",
              show_default=True)
@click.pass_obj
@reports_errors
def table_command(config, manifest, entity, output_format):
    """Per-race positions in final-standings order ('•' marks absent)."""
    season = load_season_manifest(manifest, config.MAX_WORKERS)
    table = ranking_table(season, Entity(entity) if entity else None)

    if output_format == "json":
        click.echo(dumps_json(table), nl=False)
        return
    fieldnames, flat = flatten_table(table)
    if output_format == "csv":
        click.echo(generate_csv(flat, fieldnames), nl=False)
    else:
        click.echo(
            f"{table['year']} {table['entity']}: {table['m']} races, {table['n']} ranked "
            f"({table['roster_size']} drivers, {table['team_count']} teams)"
        )
        click.echo(generate_text(flat, fieldnames), nl=False)


# --- schema -----------------------------------------------------------------

@cli.command("schema")
@click.argument("name", required=False, type=click.Choice(SCHEMA_NAMES))
def schema_command(name):
    """Print the JSON Schema of a command's output (all of them without NAME)."""
    schemas = build_schemas()
    click.echo(dumps_json(schemas[name] if name else schemas), nl=False)
