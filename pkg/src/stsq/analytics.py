"""Spectrum gap detection, interference conflicts, and time coverage.

These analytics are defined by this project (there is no external standard
for them):

* A *gap* is a maximal closed integer-hertz sub-band of a query window that
  no transmitter active during the query hours occupies.  "Active during"
  means the transmitter's hours overlap the window in any nonzero measure,
  which is the conservative reading for placing new equipment.
* A *conflict* is a pair of transmitters whose bands overlap, whose hours
  overlap, and whose sites lie within a caller-chosen radius.  Pairs that
  overlap in band and hours but lack a location on either side cannot be
  judged spatially and are reported separately as indeterminate.
* *Time coverage* is the circular union of operating hours of all
  transmitters within a radius, as maximal disjoint intervals.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import geo
from .model import (
    MINUTES_PER_DAY,
    Dataset,
    FrequencyBand,
    GeoPoint,
    HoursOfOperation,
    hours_overlap,
)


@dataclass(frozen=True)
class GapReport:
    """Unoccupied sub-bands of a window: disjoint, sorted, inside the window."""

    window: FrequencyBand
    gaps: tuple[FrequencyBand, ...]


@dataclass(frozen=True)
class ConflictPair:
    """Two transmitters that can interfere; names ordered a < b."""

    a: str
    b: str
    band_overlap: FrequencyBand
    distance_km: float


@dataclass(frozen=True)
class TimeCoverage:
    """Maximal disjoint operating intervals, sorted by start minute."""

    intervals: tuple[HoursOfOperation, ...]


def find_gaps(d: Dataset, window: FrequencyBand, during: HoursOfOperation) -> GapReport:
    """Maximal sub-bands of ``window`` free of transmitters active in ``during``.

    Occupied bands are merged on the closed integer-hertz lattice: bands
    ``[a, b]`` and ``[b + 1, c]`` are contiguous, so no gap separates them.
    """
    occupied: list[tuple[int, int]] = []
    for t in d:
        if t.band.overlaps(window) and hours_overlap(t.hours, during):
            occupied.append(
                (max(t.band.low_hz, window.low_hz), min(t.band.high_hz, window.high_hz))
            )
    occupied.sort()

    merged: list[list[int]] = []
    for low, high in occupied:
        if merged and low <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], high)
        else:
            merged.append([low, high])

    gaps: list[FrequencyBand] = []
    cursor = window.low_hz
    for low, high in merged:
        if cursor < low:
            gaps.append(FrequencyBand(cursor, low - 1))
        cursor = high + 1
    if cursor <= window.high_hz:
        gaps.append(FrequencyBand(cursor, window.high_hz))
    return GapReport(window, tuple(gaps))


def find_conflicts(
    d: Dataset, radius_km: float
) -> tuple[tuple[ConflictPair, ...], tuple[tuple[str, str], ...]]:
    """All conflicting pairs plus the pairs left undecidable by missing sites.

    A pair conflicts iff bands overlap, hours overlap, both locations are
    present, and the great-circle distance is at most ``radius_km``.
    """
    if not radius_km > 0:
        raise ValueError(f"radius must be positive, got {radius_km!r}")
    conflicts: list[ConflictPair] = []
    indeterminate: list[tuple[str, str]] = []
    items = d.transmitters
    for i, first in enumerate(items):
        for second in items[i + 1 :]:
            if not first.band.overlaps(second.band):
                continue
            if not hours_overlap(first.hours, second.hours):
                continue
            if first.location is None or second.location is None:
                indeterminate.append((first.name, second.name))
                continue
            distance = geo.haversine_km(first.location, second.location)
            if distance <= radius_km:
                overlap = FrequencyBand(
                    max(first.band.low_hz, second.band.low_hz),
                    min(first.band.high_hz, second.band.high_hz),
                )
                conflicts.append(ConflictPair(first.name, second.name, overlap, distance))
    return tuple(conflicts), tuple(indeterminate)


def active_times(d: Dataset, centre: GeoPoint, radius_km: float) -> TimeCoverage:
    """Circular union of hours of all transmitters within ``radius_km``.

    Transmitters without a location are excluded.  Wrapped arcs are cut at
    midnight, the linear pieces sort-merged, and a piece ending at 24:00 is
    re-joined with one starting at 0:00 into a single wrapping interval.
    """
    if not radius_km > 0:
        raise ValueError(f"radius must be positive, got {radius_km!r}")
    segments: list[tuple[int, int]] = []
    for t in d:
        if t.location is None:
            continue
        if geo.haversine_km(centre, t.location) <= radius_km:
            segments.extend(t.hours.segments())
    if not segments:
        return TimeCoverage(())

    segments.sort()
    merged: list[list[int]] = [list(segments[0])]
    for low, high in segments[1:]:
        if low <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], high)
        else:
            merged.append([low, high])

    if len(merged) == 1:
        low, high = merged[0]
        return TimeCoverage((HoursOfOperation(low, high),))

    # Re-join across midnight: the half-open pieces [x, 1440) and [0, y)
    # form one wrapping interval [x, y).
    if merged[0][0] == 0 and merged[-1][1] == MINUTES_PER_DAY:
        first = merged.pop(0)
        merged[-1] = [merged[-1][0], first[1]]

    intervals = tuple(
        sorted(
            (HoursOfOperation(low, high) for low, high in merged),
            key=lambda h: h.from_min,
        )
    )
    return TimeCoverage(intervals)
