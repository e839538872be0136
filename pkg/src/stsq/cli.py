"""Command-line front-end.

Subcommands: ``query`` (one-shot DSL query), ``gaps``/``conflicts``/``times``
(analytics), ``tasks run`` (task corpus runner), ``serve`` (HTTP service),
``import``/``export`` (CSV canonicalization).

Exit codes are stable: 0 success, 1 task or assertion failure, 2 usage or
parse error, 3 data error.  ``--json`` output is byte-identical to the
corresponding HTTP response body.
"""

from __future__ import annotations

import json
import re
import sys

import click

from . import serialize
from .analytics import active_times, find_conflicts, find_gaps
from .dsl import ParseError, format_hz, parse
from .evaluator import evaluate
from .ingest import MissingHeader, export_csv, import_csv
from .model import Dataset, FrequencyBand, GeoPoint, HoursOfOperation, Transmitter
from .query import Query
from .sqlgen import emit

_TABLE_COLUMNS = (
    "name",
    "latitude",
    "longitude",
    "hours_from_min",
    "hours_to_min",
    "freq_low_hz",
    "freq_high_hz",
)


def _fail(code: int, message: str) -> None:
    click.echo(message, err=True)
    sys.exit(code)


def _load_dataset(path: str) -> Dataset:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _fail(3, f"cannot read {path}: {exc}")
    try:
        dataset, report = import_csv(text)
    except MissingHeader as exc:
        _fail(3, f"{path}: {exc}")
    if not report.ok:
        for error in report.errors:
            click.echo(f"{path}: row {error.row}: {error.field}: {error.message}", err=True)
        _fail(3, f"{path}: {len(report.errors)} row error(s)")
    return dataset


def _parse_dsl(text: str) -> Query:
    try:
        return parse(text)
    except ParseError as exc:
        _fail(2, f"parse error at offset {exc.offset}: expected {exc.expected}")


def _render_table(rows: tuple[Transmitter, ...]) -> str:
    cells = [list(_TABLE_COLUMNS)]
    for t in rows:
        cells.append(
            [
                t.name,
                repr(t.location.lat) if t.location else "",
                repr(t.location.lon) if t.location else "",
                str(t.hours.from_min),
                str(t.hours.to_min),
                str(t.band.low_hz),
                str(t.band.high_hz),
            ]
        )
    widths = [max(len(row[i]) for row in cells) for i in range(len(_TABLE_COLUMNS))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


def _parse_time_point(text: str) -> int:
    m = re.fullmatch(r"(\d{1,2}):(\d{2})", text)
    if not m or int(m.group(2)) > 59 or int(m.group(1)) * 60 + int(m.group(2)) > 1440:
        raise click.UsageError(f"bad time {text!r}: expected H:MM up to 24:00")
    return int(m.group(1)) * 60 + int(m.group(2))


def _parse_window(text: str) -> FrequencyBand:
    parts = text.split("..")
    if len(parts) != 2:
        raise click.UsageError(f"bad window {text!r}: expected <freq>..<freq>")
    from . import dsl

    try:
        return FrequencyBand(dsl.parse_frequency(parts[0]), dsl.parse_frequency(parts[1]))
    except ValueError as exc:
        raise click.UsageError(f"bad window {text!r}: {exc}") from None


def _parse_hours_range(text: str) -> HoursOfOperation:
    parts = text.split("..")
    if len(parts) != 2:
        raise click.UsageError(f"bad hours {text!r}: expected H:MM..H:MM")
    try:
        return HoursOfOperation(_parse_time_point(parts[0]), _parse_time_point(parts[1]))
    except ValueError as exc:
        raise click.UsageError(f"bad hours {text!r}: {exc}") from None


def _parse_point(text: str) -> GeoPoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise click.UsageError(f"bad point {text!r}: expected lat,lon")
    try:
        return GeoPoint(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise click.UsageError(f"bad point {text!r}: {exc}") from None


@click.group()
def main() -> None:
    """Query and analyze spatial-temporal-spectral transmitter data."""


@main.command("query")
@click.option("--data", "data_path", required=True, help="Dataset CSV.")
@click.option("--json", "as_json", is_flag=True, help="Emit the HTTP response body.")
@click.option("--sql-only", is_flag=True, help="Print only the generated SQL text.")
@click.argument("dsl_text")
def query_cmd(data_path: str, as_json: bool, sql_only: bool, dsl_text: str) -> None:
    """Evaluate a DSL query and print the matches plus the generated SQL."""
    q = _parse_dsl(dsl_text)
    if sql_only:
        click.echo(emit(q).text)
        return
    dataset = _load_dataset(data_path)
    matches = evaluate(q, dataset)
    statement = emit(q)
    if as_json:
        click.echo(serialize.dumps(serialize.query_response_obj(matches, statement)), nl=False)
        return
    click.echo(_render_table(matches))
    click.echo(f"\nSQL: {statement.text}")
    click.echo(f"params: {json.dumps(list(statement.params))}")


@main.command("gaps")
@click.option("--data", "data_path", required=True)
@click.option("--window", required=True, help="Frequency window, e.g. 25MHz..35MHz.")
@click.option("--hours", required=True, help="Time window, e.g. 03:00..08:00.")
@click.option("--json", "as_json", is_flag=True)
def gaps_cmd(data_path: str, window: str, hours: str, as_json: bool) -> None:
    """Report unoccupied sub-bands of a window during the given hours."""
    band = _parse_window(window)
    during = _parse_hours_range(hours)
    dataset = _load_dataset(data_path)
    report = find_gaps(dataset, band, during)
    if as_json:
        click.echo(serialize.dumps(serialize.gap_report_obj(report)), nl=False)
        return
    click.echo(
        f"gaps in {report.window.low_hz}..{report.window.high_hz} Hz "
        f"({format_hz(report.window.low_hz)}..{format_hz(report.window.high_hz)}):"
    )
    if not report.gaps:
        click.echo("  none: the window is fully occupied")
    for gap in report.gaps:
        click.echo(
            f"  {gap.low_hz}..{gap.high_hz}  ({format_hz(gap.low_hz)}..{format_hz(gap.high_hz)})"
        )


@main.command("conflicts")
@click.option("--data", "data_path", required=True)
@click.option("--radius", required=True, type=float, help="Conflict radius in km.")
@click.option("--json", "as_json", is_flag=True)
def conflicts_cmd(data_path: str, radius: float, as_json: bool) -> None:
    """List transmitter pairs that can interfere within a radius."""
    if not radius > 0:
        raise click.UsageError("radius must be positive")
    dataset = _load_dataset(data_path)
    found, indeterminate = find_conflicts(dataset, radius)
    if as_json:
        click.echo(serialize.dumps(serialize.conflicts_obj(found, indeterminate)), nl=False)
        return
    if not found and not indeterminate:
        click.echo("no conflicts")
        return
    for pair in found:
        click.echo(
            f"conflict: {pair.a} <-> {pair.b}  "
            f"overlap {pair.band_overlap.low_hz}..{pair.band_overlap.high_hz} Hz  "
            f"distance {pair.distance_km:.3f} km"
        )
    for a, b in indeterminate:
        click.echo(f"indeterminate (missing location): {a} <-> {b}")


@main.command("times")
@click.option("--data", "data_path", required=True)
@click.option("--at", "at_point", required=True, help="Centre as lat,lon.")
@click.option("--radius", required=True, type=float, help="Radius in km.")
@click.option("--json", "as_json", is_flag=True)
def times_cmd(data_path: str, at_point: str, radius: float, as_json: bool) -> None:
    """Show when any transmitter within a radius is on the air."""
    if not radius > 0:
        raise click.UsageError("radius must be positive")
    centre = _parse_point(at_point)
    dataset = _load_dataset(data_path)
    coverage = active_times(dataset, centre, radius)
    if as_json:
        click.echo(serialize.dumps(serialize.coverage_obj(coverage)), nl=False)
        return
    if not coverage.intervals:
        click.echo("no transmissions within radius")
        return
    for interval in coverage.intervals:
        start = f"{interval.from_min // 60:02d}:{interval.from_min % 60:02d}"
        end = f"{interval.to_min // 60:02d}:{interval.to_min % 60:02d}"
        wrap = "  (wraps midnight)" if interval.wraps else ""
        click.echo(f"{start}..{end}{wrap}")


@main.group("tasks")
def tasks_group() -> None:
    """Task corpus utilities."""


def _load_corpus(path: str) -> list[dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        _fail(2, f"cannot read corpus {path}: {exc}")
    except ValueError as exc:
        _fail(2, f"corpus {path}: malformed JSON: {exc}")
    if not isinstance(doc, dict) or not isinstance(doc.get("tasks"), list):
        _fail(2, f"corpus {path}: expected an object with a 'tasks' array")
    tasks = doc["tasks"]
    seen_ids: set[str] = set()
    for i, task in enumerate(tasks):
        if not isinstance(task, dict):
            _fail(2, f"corpus {path}: tasks[{i}] is not an object")
        for key, kind in (("id", str), ("dsl", str)):
            if not isinstance(task.get(key), kind) or not task[key]:
                _fail(2, f"corpus {path}: tasks[{i}].{key} missing or invalid")
        names = task.get("expected_names")
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            _fail(2, f"corpus {path}: tasks[{i}].expected_names must be a string array")
        if task["id"] in seen_ids:
            _fail(2, f"corpus {path}: duplicate task id {task['id']!r}")
        seen_ids.add(task["id"])
        try:
            parse(task["dsl"])
        except ParseError as exc:
            _fail(2, f"corpus {path}: tasks[{i}].dsl does not parse: {exc}")
    return tasks


@tasks_group.command("run")
@click.option("--data", "data_path", required=True)
@click.option("--corpus", "corpus_path", required=True)
def tasks_run(data_path: str, corpus_path: str) -> None:
    """Run every corpus task and compare against its expected name set."""
    tasks = _load_corpus(corpus_path)
    dataset = _load_dataset(data_path)
    failures = 0
    for task in tasks:
        expected = sorted(task["expected_names"])
        got = sorted(t.name for t in evaluate(parse(task["dsl"]), dataset))
        if got == expected:
            click.echo(f"PASS {task['id']}")
        else:
            failures += 1
            click.echo(f"FAIL {task['id']}: expected {expected}, got {got}")
    click.echo(f"{len(tasks) - failures}/{len(tasks)} tasks passed")
    if failures:
        sys.exit(1)


@main.command("serve")
@click.option("--port", type=int, default=None, help="Override STSQ_PORT (default 8080).")
@click.option("--data", "data_path", default=None, help="Override STSQ_DATA.")
def serve_cmd(port: int | None, data_path: str | None) -> None:
    """Start the HTTP service (honours STSQ_PORT, STSQ_DATA, STSQ_CORS_ORIGIN)."""
    import os

    import uvicorn

    from .service import app_from_env

    if data_path:
        os.environ["STSQ_DATA"] = data_path
    if port is None:
        port = int(os.environ.get("STSQ_PORT", "8080"))
    try:
        app = app_from_env()
        uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
    except SystemExit as exc:
        if exc.code:
            _fail(1, f"server failed to start on port {port}")
        raise
    except OSError as exc:
        _fail(1, f"cannot serve on port {port}: {exc}")


@main.command("import")
@click.argument("csv_path")
def import_cmd(csv_path: str) -> None:
    """Validate a CSV and write its canonical form to stdout."""
    dataset = _load_dataset(csv_path)
    click.echo(export_csv(dataset), nl=False)


@main.command("export")
@click.option("--data", "data_path", required=True)
def export_cmd(data_path: str) -> None:
    """Write the canonical CSV of a dataset to stdout."""
    dataset = _load_dataset(data_path)
    click.echo(export_csv(dataset), nl=False)


if __name__ == "__main__":
    main()
