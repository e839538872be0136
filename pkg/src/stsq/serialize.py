"""Canonical JSON shapes shared by the HTTP service and the CLI.

Both surfaces must emit byte-identical documents for the same inputs, so
all wire serialization funnels through here: plain dicts built in schema
key order, dumped compactly without ASCII escaping.
"""

from __future__ import annotations

import json

from .analytics import ConflictPair, GapReport, TimeCoverage
from .ingest import ImportReport
from .model import Dataset, FrequencyBand, Transmitter
from .sqlgen import SqlStatement


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def transmitter_obj(t: Transmitter) -> dict:
    return {
        "name": t.name,
        "location": (
            {"lat": t.location.lat, "lon": t.location.lon} if t.location else None
        ),
        "hours": {"from_min": t.hours.from_min, "to_min": t.hours.to_min},
        "band": {"low_hz": t.band.low_hz, "high_hz": t.band.high_hz},
    }


def band_obj(band: FrequencyBand) -> dict:
    return {"low_hz": band.low_hz, "high_hz": band.high_hz}


def transmitters_obj(d: Dataset) -> dict:
    return {"transmitters": [transmitter_obj(t) for t in d]}


def query_response_obj(matches: tuple[Transmitter, ...], sql: SqlStatement) -> dict:
    return {
        "matches": [transmitter_obj(t) for t in matches],
        "sql": {"text": sql.text, "params": list(sql.params)},
    }


def gap_report_obj(report: GapReport) -> dict:
    return {
        "window": band_obj(report.window),
        "gaps": [band_obj(g) for g in report.gaps],
    }


def conflicts_obj(
    conflicts: tuple[ConflictPair, ...], indeterminate: tuple[tuple[str, str], ...]
) -> dict:
    return {
        "conflicts": [
            {
                "a": c.a,
                "b": c.b,
                "band_overlap": band_obj(c.band_overlap),
                "distance_km": c.distance_km,
            }
            for c in conflicts
        ],
        "indeterminate": [{"a": a, "b": b} for a, b in indeterminate],
    }


def coverage_obj(coverage: TimeCoverage) -> dict:
    return {
        "intervals": [
            {"from_min": h.from_min, "to_min": h.to_min} for h in coverage.intervals
        ]
    }


def import_report_obj(report: ImportReport) -> dict:
    return {
        "imported": report.imported,
        "errors": [
            {"row": e.row, "field": e.field, "message": e.message} for e in report.errors
        ],
    }


def error_obj(path: str, message: str) -> dict:
    return {"error": {"path": path, "message": message}}
