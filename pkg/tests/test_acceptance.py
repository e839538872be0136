"""Acceptance gate: every release criterion, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v``.  Each criterion prints
``ACCEPTANCE <name>: PASS|FAIL`` directly to the terminal (bypassing
capture) in addition to its pytest verdict.
"""

from __future__ import annotations

import json
import random
import sys
import time
from contextlib import contextmanager

import numpy as np
from click.testing import CliRunner
from fastapi.testclient import TestClient

from stsq import geo
from stsq.cli import main as cli_main
from stsq.data import sample_dataset_path, task_corpus_path
from stsq.dsl import parse, print_query
from stsq.evaluator import evaluate
from stsq.ingest import export_csv, import_csv
from stsq.model import (
    Dataset,
    FrequencyBand,
    GeoPoint,
    HoursOfOperation,
    Transmitter,
    hours_overlap,
)
from stsq.analytics import active_times, find_conflicts, find_gaps
from stsq.query import query_from_json, query_to_json
from stsq.service import create_app
from stsq.sqlgen import emit, interpret
from tests import gen, oracles

SAMPLE = str(sample_dataset_path())
CORPUS = str(task_corpus_path())

MOBILE_SITE = GeoPoint(38.66996111111111, -90.11936944444444)
RAILWAY_SITE = GeoPoint(38.629311111111114, -90.23519166666667)


def _line(text: str) -> None:
    sys.__stdout__.write(text + "\n")
    sys.__stdout__.flush()


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        _line(f"ACCEPTANCE {name}: FAIL")
        raise
    _line(f"ACCEPTANCE {name}: PASS")


def test_c1_task_corpus(sample_dataset):
    with criterion("task-corpus"):
        started = time.perf_counter()
        result = CliRunner().invoke(
            cli_main, ["tasks", "run", "--data", SAMPLE, "--corpus", CORPUS]
        )
        elapsed = time.perf_counter() - started
        assert result.exit_code == 0, result.output
        assert result.output.count("PASS") == 12
        assert "12/12 tasks passed" in result.output
        assert elapsed < 1.0, f"corpus run took {elapsed:.3f}s"

        # The four pinned derived results.
        assert evaluate(parse("freq 90MHz +/- 1MHz"), sample_dataset) == ()
        active = evaluate(parse("active 01:00..04:00"), sample_dataset)
        assert [t.name for t in active] == [
            "Emergency Communications System",
            "International Aeronautical Distress",
            "Mobile Phone Tower 123",
            "University Satcom",
        ]
        assert len(evaluate(parse("not freq 90MHz..100MHz"), sample_dataset)) == 6
        report = find_gaps(
            sample_dataset,
            FrequencyBand(25_000_000, 35_000_000),
            HoursOfOperation(180, 480),
        )
        assert [(g.low_hz, g.high_hz) for g in report.gaps] == [
            (25_000_000, 25_998_999),
            (26_001_001, 35_000_000),
        ]


def test_c2_emitter_evaluator_equivalence():
    with criterion("emitter-evaluator-equivalence"):
        rng = random.Random(0xE0)
        pool = [gen.rand_dataset(rng, max_rows=200) for _ in range(60)]
        started = time.perf_counter()
        for i in range(1000):
            d = pool[i % len(pool)]
            q = gen.rand_query(rng, d)
            assert interpret(emit(q), d) == evaluate(q, d), print_query(q)
        elapsed = time.perf_counter() - started
        assert elapsed < 30.0, f"equivalence run took {elapsed:.1f}s"


def test_c3_hours_overlap_brute_force():
    with criterion("hours-overlap-brute-force"):
        rng = random.Random(0xC3)
        for _ in range(300):
            a, b = gen.rand_hours(rng), gen.rand_hours(rng)
            assert hours_overlap(a, b) == oracles.hours_overlap_brute(a, b)


def test_c3_circular_union_brute_force():
    with criterion("circular-union-brute-force"):
        rng = random.Random(0xC4)
        for _ in range(220):
            d = gen.rand_dataset(rng, max_rows=12, location_rate=0.8)
            centre = gen.rand_point(rng)
            radius = rng.uniform(0.5, 8000.0)
            coverage = active_times(d, centre, radius)
            expected = oracles.coverage_minutes_brute(d, centre, radius)
            got = {
                m
                for m in range(1440)
                if any(
                    oracles.minute_in_window(m, h.from_min, h.to_min)
                    for h in coverage.intervals
                )
            }
            assert got == expected


def test_c3_gap_partition_brute_force():
    with criterion("gap-partition-brute-force"):
        rng = random.Random(0xC5)
        for _ in range(220):
            d = gen.rand_dataset(rng, max_rows=10, max_band_width=10**5)
            low = rng.randrange(0, 10**6)
            window = FrequencyBand(low, low + rng.randrange(0, 10**6))
            during = gen.rand_hours(rng)
            report = find_gaps(d, window, during)
            assert [
                (g.low_hz, g.high_hz) for g in report.gaps
            ] == oracles.gaps_lattice_brute(d, window, during)

            # Partition on the integer lattice: gaps and occupied cells tile
            # the window exactly, with no overlap.
            span = window.width_hz + 1
            occupied = np.zeros(span, dtype=bool)
            for t in d:
                if not oracles.hours_overlap_brute(t.hours, during):
                    continue
                lo = max(t.band.low_hz, window.low_hz) - window.low_hz
                hi = min(t.band.high_hz, window.high_hz) - window.low_hz
                if lo <= hi:
                    occupied[lo : hi + 1] = True
            gap_cells = np.zeros(span, dtype=bool)
            for g in report.gaps:
                gap_cells[g.low_hz - window.low_hz : g.high_hz - window.low_hz + 1] = True
            assert not np.any(gap_cells & occupied)
            assert np.all(gap_cells | occupied)


def test_c4_round_trips():
    with criterion("round-trips"):
        rng = random.Random(0xC6)
        seed_rows = gen.rand_dataset(rng, max_rows=30)
        for _ in range(1000):
            q = gen.rand_query(rng, seed_rows)
            assert parse(print_query(q)) == q
        for _ in range(1000):
            q = gen.rand_query(rng, seed_rows)
            assert query_from_json(query_to_json(q)) == q
        for _ in range(1000):
            d = gen.rand_dataset(rng, max_rows=12)
            again, report = import_csv(export_csv(d))
            assert report.ok
            assert again == d


def test_c5_geodesy():
    with criterion("geodesy"):
        rng = random.Random(0xC7)
        for _ in range(2000):
            a, b, c = (gen.rand_point(rng) for _ in range(3))
            ab, ba = geo.haversine_km(a, b), geo.haversine_km(b, a)
            assert ab == ba
            assert geo.haversine_km(a, a) == 0.0
            assert geo.haversine_km(a, c) <= ab + geo.haversine_km(b, c) + 1e-6

        got = geo.haversine_km(MOBILE_SITE, RAILWAY_SITE)
        reference = oracles.law_of_cosines_km(MOBILE_SITE, RAILWAY_SITE)
        assert abs(got - reference) / reference < 0.005
        antipodal = geo.haversine_km(GeoPoint(0, 0), GeoPoint(0, 180))
        assert abs(antipodal - 20015.115) <= 0.01


def test_c6_conflicts_on_sample(sample_dataset):
    with criterion("conflict-detection"):
        conflicts, indeterminate = find_conflicts(sample_dataset, 50.0)
        assert conflicts == ()
        assert indeterminate == ()

        # Independent 15-pair brute force.
        rows = list(sample_dataset)
        assert len(rows) == 6
        pairs = [(a, b) for i, a in enumerate(rows) for b in rows[i + 1 :]]
        assert len(pairs) == 15
        for a, b in pairs:
            bands = oracles.band_overlap_brute(a.band, b.band)
            hours = oracles.hours_overlap_brute(a.hours, b.hours)
            if not (bands and hours):
                continue
            if a.location is None or b.location is None:
                raise AssertionError(f"brute force found indeterminate pair {a.name}/{b.name}")
            if geo.haversine_km(a.location, b.location) <= 50.0:
                raise AssertionError(f"brute force found conflict {a.name}/{b.name}")


def test_c7_service_contract(sample_dataset):
    with criterion("service-contract"):
        client = TestClient(create_app(sample_dataset))

        # Listing.
        listing = client.get("/api/transmitters")
        assert listing.status_code == 200
        body = listing.json()
        assert len(body["transmitters"]) == 6
        assert (
            next(
                t
                for t in body["transmitters"]
                if t["name"] == "International Aeronautical Distress"
            )["location"]
            is None
        )
        assert client.get("/api/transmitters").content == listing.content

        # Query: success, schema error, empty result, size limit.
        active_body = {
            "clauses": [
                {
                    "include": True,
                    "predicate": {"type": "active", "from_min": 60, "to_min": 240},
                }
            ],
            "connectors": [],
        }
        resp = client.post("/api/query", json=active_body)
        assert resp.status_code == 200
        assert len(resp.json()["matches"]) == 4
        mismatch = dict(active_body, connectors=["and"])
        resp = client.post("/api/query", json=mismatch)
        assert resp.status_code == 400 and resp.json()["error"]["path"] == "connectors"
        band_body = {
            "clauses": [
                {
                    "include": True,
                    "predicate": {
                        "type": "band",
                        "low_hz": 89_000_000,
                        "high_hz": 91_000_000,
                    },
                }
            ],
            "connectors": [],
        }
        assert client.post("/api/query", json=band_body).json()["matches"] == []
        assert (
            client.post("/api/query", content=b" " * ((1 << 20) + 1)).status_code == 413
        )

        # Gaps: example, inverted window, empty dataset.
        resp = client.post(
            "/api/gaps",
            json={
                "window": {"low_hz": 25_000_000, "high_hz": 35_000_000},
                "during": {"from_min": 180, "to_min": 480},
            },
        )
        assert resp.json()["gaps"] == [
            {"low_hz": 25_000_000, "high_hz": 25_998_999},
            {"low_hz": 26_001_001, "high_hz": 35_000_000},
        ]
        assert (
            client.post(
                "/api/gaps",
                json={
                    "window": {"low_hz": 2, "high_hz": 1},
                    "during": {"from_min": 0, "to_min": 1440},
                },
            ).status_code
            == 400
        )
        empty_client = TestClient(create_app(Dataset()))
        assert empty_client.post(
            "/api/gaps",
            json={
                "window": {"low_hz": 5, "high_hz": 9},
                "during": {"from_min": 0, "to_min": 1440},
            },
        ).json()["gaps"] == [{"low_hz": 5, "high_hz": 9}]

        # Conflicts: clean sample, bad radius, colocated twins.
        resp = client.post("/api/conflicts", json={"radius_km": 50})
        assert resp.json() == {"conflicts": [], "indeterminate": []}
        assert client.post("/api/conflicts", json={"radius_km": 0}).status_code == 400
        twins = Dataset(
            tuple(
                Transmitter(n, GeoPoint(3, 3), HoursOfOperation(0, 1440), FrequencyBand(7, 9))
                for n in ("a", "b")
            )
        )
        twin_client = TestClient(create_app(twins))
        assert len(twin_client.post("/api/conflicts", json={"radius_km": 1}).json()["conflicts"]) == 1

        # Active times: full-day union, remote point, wrapped interval.
        resp = client.post(
            "/api/active-times",
            json={"lat": MOBILE_SITE.lat, "lon": MOBILE_SITE.lon, "radius_km": 20},
        )
        assert resp.json() == {"intervals": [{"from_min": 0, "to_min": 1440}]}
        assert client.post(
            "/api/active-times", json={"lat": -75.0, "lon": 3.0, "radius_km": 5}
        ).json() == {"intervals": []}
        night = Dataset(
            (
                Transmitter(
                    "night",
                    GeoPoint(1, 1),
                    HoursOfOperation(1200, 600),
                    FrequencyBand(1, 2),
                ),
            )
        )
        assert TestClient(create_app(night)).post(
            "/api/active-times", json={"lat": 1, "lon": 1, "radius_km": 5}
        ).json() == {"intervals": [{"from_min": 1200, "to_min": 600}]}

        # Import/export: success, all-or-nothing failure, round trip.
        fresh = TestClient(create_app(Dataset()))
        text = sample_dataset_path().read_text(encoding="utf-8")
        resp = fresh.post("/api/import", content=text.encode("utf-8"))
        assert resp.status_code == 200
        assert resp.json() == {"imported": 6, "errors": []}
        before = fresh.get("/api/export").content
        bad_csv = (
            "name,latitude,longitude,hours,centre_frequency,bandwidth,"
            "min_frequency,max_frequency\nbroken,,,nope,,,1,2\n"
        )
        resp = fresh.post("/api/import", content=bad_csv.encode("utf-8"))
        assert resp.status_code == 422
        assert fresh.get("/api/export").content == before
        again, report = import_csv(fresh.get("/api/export").text)
        assert report.ok and again == import_csv(text)[0]
