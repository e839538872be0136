#!/usr/bin/env python3
"""Walk the bundled sample dataset through the main features.

Prints a handful of DSL queries with their matches and generated SQL, then
the three analytics (gaps, conflicts, time coverage).  Handy as a living
smoke test and as copy-paste material for the README.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from stsq.analytics import active_times, find_conflicts, find_gaps
from stsq.data import sample_dataset_path
from stsq.dsl import format_hz, parse
from stsq.evaluator import evaluate
from stsq.ingest import import_csv
from stsq.model import FrequencyBand, GeoPoint, HoursOfOperation
from stsq.sqlgen import emit

QUERIES = [
    "freq 90MHz +/- 1MHz",
    "active 01:00..04:00",
    "not freq 90MHz..100MHz",
    'name = "Stadium" or within 20 km of (38.669961, -90.119369)',
]


def main() -> None:
    dataset, report = import_csv(sample_dataset_path().read_text(encoding="utf-8"))
    assert report.ok

    for text in QUERIES:
        query = parse(text)
        names = [t.name for t in evaluate(query, dataset)]
        print(f"query: {text}")
        print(f"  matches ({len(names)}): {names}")
        print(f"  sql: {emit(query).text[:100]}...")
        print()

    window = FrequencyBand(25_000_000, 35_000_000)
    gaps = find_gaps(dataset, window, HoursOfOperation(180, 480))
    print("free sub-bands of 25-35 MHz while anything is on air 03:00-08:00:")
    for gap in gaps.gaps:
        print(f"  {format_hz(gap.low_hz)} .. {format_hz(gap.high_hz)}")
    print()

    conflicts, indeterminate = find_conflicts(dataset, 50.0)
    print(f"conflicts within 50 km: {len(conflicts)} (indeterminate: {len(indeterminate)})")
    print()

    coverage = active_times(dataset, GeoPoint(38.669961, -90.119369), 20.0)
    print("on-air times within 20 km of the mobile tower:")
    for h in coverage.intervals:
        print(f"  {h.from_min // 60:02d}:{h.from_min % 60:02d} .. {h.to_min // 60:02d}:{h.to_min % 60:02d}")


if __name__ == "__main__":
    main()
