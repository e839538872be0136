from __future__ import annotations

import random

import pytest

from stsq.analytics import active_times, find_conflicts, find_gaps
from stsq.model import (
    Dataset,
    FrequencyBand,
    GeoPoint,
    HoursOfOperation,
    Transmitter,
)
from tests import gen, oracles

MOBILE_SITE = GeoPoint(38.66996111111111, -90.11936944444444)


def _tx(name, location, hours, band):
    return Transmitter(name, location, HoursOfOperation(*hours), FrequencyBand(*band))


class TestFindGaps:
    def test_sample_window_during_morning(self, sample_dataset):
        report = find_gaps(
            sample_dataset,
            FrequencyBand(25_000_000, 35_000_000),
            HoursOfOperation(180, 480),
        )
        assert [(g.low_hz, g.high_hz) for g in report.gaps] == [
            (25_000_000, 25_998_999),
            (26_001_001, 35_000_000),
        ]

    def test_empty_dataset_leaves_whole_window(self):
        window = FrequencyBand(100, 200)
        report = find_gaps(Dataset(), window, HoursOfOperation(0, 1440))
        assert report.gaps == (window,)

    def test_window_inside_active_band(self):
        d = Dataset((_tx("wide", None, (0, 1440), (0, 10**9)),))
        report = find_gaps(d, FrequencyBand(100, 200), HoursOfOperation(0, 1440))
        assert report.gaps == ()

    def test_half_open_hours_exclude_touching_transmitter(self, sample_dataset):
        # The 8:00-20:00 row only touches a 3:00-8:00 window, so its band
        # must not count as occupied.
        report = find_gaps(
            sample_dataset,
            FrequencyBand(29_000_000, 31_000_000),
            HoursOfOperation(180, 480),
        )
        assert report.gaps == (FrequencyBand(29_000_000, 31_000_000),)

    def test_partition_against_lattice_oracle(self):
        rng = random.Random(77)
        for _ in range(60):
            d = gen.rand_dataset(rng, max_rows=12, max_band_width=10**5)
            width = rng.randrange(0, 10**6)
            low = rng.randrange(0, 10**6)
            window = FrequencyBand(low, low + width)
            during = gen.rand_hours(rng)
            report = find_gaps(d, window, during)
            expected = oracles.gaps_lattice_brute(d, window, during)
            assert [(g.low_hz, g.high_hz) for g in report.gaps] == expected

    def test_gaps_are_maximal_and_sorted(self):
        rng = random.Random(78)
        for _ in range(60):
            d = gen.rand_dataset(rng, max_rows=10, max_band_width=10**4)
            low = rng.randrange(0, 10**5)
            window = FrequencyBand(low, low + rng.randrange(0, 10**5))
            report = find_gaps(d, window, gen.rand_hours(rng))
            for gap in report.gaps:
                assert window.low_hz <= gap.low_hz <= gap.high_hz <= window.high_hz
            for before, after in zip(report.gaps, report.gaps[1:]):
                assert after.low_hz > before.high_hz + 1


class TestFindConflicts:
    def test_sample_dataset_is_conflict_free_at_50km(self, sample_dataset):
        conflicts, indeterminate = find_conflicts(sample_dataset, 50.0)
        assert conflicts == ()
        assert indeterminate == ()

    def test_colocated_twins_conflict(self):
        site = GeoPoint(10.0, 20.0)
        d = Dataset(
            (
                _tx("twin-a", site, (0, 1440), (100, 200)),
                _tx("twin-b", site, (0, 1440), (100, 200)),
            )
        )
        conflicts, indeterminate = find_conflicts(d, 1.0)
        assert indeterminate == ()
        (pair,) = conflicts
        assert (pair.a, pair.b) == ("twin-a", "twin-b")
        assert pair.band_overlap == FrequencyBand(100, 200)
        assert pair.distance_km == 0.0

    def test_partial_band_overlap_reported(self):
        site = GeoPoint(0.0, 0.0)
        d = Dataset(
            (
                _tx("x", site, (0, 1440), (100, 300)),
                _tx("y", site, (0, 1440), (200, 400)),
            )
        )
        (pair,), _ = find_conflicts(d, 5.0)
        assert pair.band_overlap == FrequencyBand(200, 300)

    def test_missing_location_goes_indeterminate(self):
        d = Dataset(
            (
                _tx("grounded", GeoPoint(0, 0), (0, 1440), (100, 200)),
                _tx("floating", None, (0, 1440), (150, 250)),
            )
        )
        conflicts, indeterminate = find_conflicts(d, 10.0)
        assert conflicts == ()
        assert indeterminate == (("floating", "grounded"),)

    def test_disjoint_hours_never_conflict(self):
        site = GeoPoint(0.0, 0.0)
        d = Dataset(
            (
                _tx("day", site, (480, 720), (100, 200)),
                _tx("night", site, (720, 960), (100, 200)),
            )
        )
        assert find_conflicts(d, 10.0) == ((), ())

    def test_radius_must_be_positive(self, sample_dataset):
        with pytest.raises(ValueError):
            find_conflicts(sample_dataset, 0.0)

    def test_order_independence(self):
        rng = random.Random(79)
        for _ in range(40):
            rows = list(gen.rand_dataset(rng, max_rows=12, location_rate=0.7))
            rng.shuffle(rows)
            shuffled = Dataset(tuple(rows))
            baseline = find_conflicts(Dataset(tuple(rows)), 100.0)
            assert find_conflicts(shuffled, 100.0) == baseline
            for pair in baseline[0]:
                assert pair.a < pair.b
            for a, b in baseline[1]:
                assert a < b


class TestActiveTimes:
    def test_sample_centre_covers_full_day(self, sample_dataset):
        coverage = active_times(sample_dataset, MOBILE_SITE, 20.0)
        assert [(h.from_min, h.to_min) for h in coverage.intervals] == [(0, 1440)]

    def test_remote_point_has_no_coverage(self, sample_dataset):
        coverage = active_times(sample_dataset, GeoPoint(-80.0, 10.0), 5.0)
        assert coverage.intervals == ()

    def test_single_wrapped_transmitter_reported_as_one_interval(self):
        d = Dataset((_tx("night owl", GeoPoint(1, 1), (1200, 600), (10, 20)),))
        coverage = active_times(d, GeoPoint(1, 1), 1.0)
        assert [(h.from_min, h.to_min) for h in coverage.intervals] == [(1200, 600)]

    def test_union_rejoins_across_midnight(self):
        site = GeoPoint(5, 5)
        d = Dataset(
            (
                _tx("late", site, (1320, 1440), (10, 20)),
                _tx("early", site, (0, 180), (30, 40)),
            )
        )
        coverage = active_times(d, site, 1.0)
        assert [(h.from_min, h.to_min) for h in coverage.intervals] == [(1320, 180)]

    def test_radius_must_be_positive(self, sample_dataset):
        with pytest.raises(ValueError):
            active_times(sample_dataset, MOBILE_SITE, -1.0)

    def test_membership_matches_per_minute_brute_force(self):
        rng = random.Random(80)
        for _ in range(60):
            d = gen.rand_dataset(rng, max_rows=10, location_rate=0.8)
            centre = gen.rand_point(rng)
            radius = rng.uniform(0.5, 5000.0)
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

    def test_intervals_are_maximal_sorted_disjoint(self):
        rng = random.Random(81)
        for _ in range(60):
            d = gen.rand_dataset(rng, max_rows=10)
            coverage = active_times(d, gen.rand_point(rng), rng.uniform(1, 20000))
            intervals = coverage.intervals
            assert list(intervals) == sorted(intervals, key=lambda h: h.from_min)
            wrapping = [h for h in intervals if h.wraps]
            assert len(wrapping) <= 1
            if len(intervals) > 1:
                # Non-adjacency on the circle: consecutive ends never touch
                # the next start, and the wrap (if any) never touches the
                # first start.
                for before, after in zip(intervals, intervals[1:]):
                    end = before.to_min if not before.wraps else None
                    if end is not None:
                        assert end < after.from_min
                last = intervals[-1]
                if last.wraps:
                    assert last.to_min < intervals[0].from_min
                else:
                    assert last.to_min < 1440 or intervals[0].from_min > 0
