#!/usr/bin/env python3
"""Freeze canonical engine outputs as fixtures for the frontend tests.

Writes into frontend/tests/fixtures/:

* expected query JSON documents (as the Python codec encodes them) for the
  scripted form states the frontend tests build, and
* the exact /api/query response body for the active-01:00-04:00 scenario
  over the sample dataset.

Run from the repository root after changing the codec, the service wire
format, or the sample dataset.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT))

from fastapi.testclient import TestClient  # noqa: E402

from stsq.data import sample_dataset_path  # noqa: E402
from stsq.ingest import import_csv  # noqa: E402
from stsq.model import FrequencyBand, GeoPoint, HoursOfOperation  # noqa: E402
from stsq.query import (  # noqa: E402
    ActiveDuring,
    BandOverlaps,
    Clause,
    Connector,
    NameIs,
    Query,
    WithinKm,
    query_to_json,
)
from stsq.service import create_app  # noqa: E402

FIXTURE_DIR = REPO_ROOT / "frontend" / "tests" / "fixtures"

QUERIES = {
    # One frequency row, centre 90 MHz with 1 MHz tolerance.
    "query_tolerance_band.json": Query(
        (Clause(BandOverlaps(FrequencyBand(89_000_000, 91_000_000))),)
    ),
    # One location row with the include checkbox cleared.
    "query_excluded_location.json": Query(
        (Clause(WithinKm(GeoPoint(38.6293, -90.2352), 10.0), include=False),)
    ),
    # Two rows joined by OR.
    "query_two_rows_or.json": Query(
        (
            Clause(NameIs("Stadium")),
            Clause(ActiveDuring(HoursOfOperation(60, 240))),
        ),
        (Connector.OR,),
    ),
}


def main() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    for name, query in QUERIES.items():
        (FIXTURE_DIR / name).write_text(query_to_json(query) + "\n", encoding="utf-8")
        print(f"wrote {name}")

    dataset, report = import_csv(sample_dataset_path().read_text(encoding="utf-8"))
    assert report.ok
    client = TestClient(create_app(dataset))
    body = {
        "clauses": [
            {
                "include": True,
                "predicate": {"type": "active", "from_min": 60, "to_min": 240},
            }
        ],
        "connectors": [],
    }
    resp = client.post("/api/query", json=body)
    assert resp.status_code == 200
    (FIXTURE_DIR / "response_active_1_to_4.json").write_bytes(resp.content + b"\n")
    print("wrote response_active_1_to_4.json")


if __name__ == "__main__":
    main()
