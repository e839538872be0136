"""Core value types: geographic points, hours of operation, frequency bands,
transmitters, and datasets.

All types are immutable and validate their invariants on construction, so a
value that exists is a valid value.  Frequencies are exact non-negative
integer hertz (no float comparisons anywhere in band logic).  Time of day is
whole minutes since midnight; hours-of-operation intervals are half-open
``[from, to)`` and wrap midnight when ``from > to``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

#: Frequencies are bounded by one terahertz, the top of the queryable axis.
MAX_HZ = 10**12

#: Minutes in a day; 1440 is a legal interval *end* meaning 24:00.
MINUTES_PER_DAY = 1440


class InvertedRange(ValueError):
    """Band lower edge above its upper edge."""


class UpperBoundExceeded(ValueError):
    """Band edge above the 1 THz ceiling."""


@dataclass(frozen=True)
class GeoPoint:
    """A WGS-ish latitude/longitude pair in decimal degrees."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lat) and -90.0 <= self.lat <= 90.0):
            raise ValueError(f"latitude out of range: {self.lat!r}")
        if not (math.isfinite(self.lon) and -180.0 <= self.lon <= 180.0):
            raise ValueError(f"longitude out of range: {self.lon!r}")


@dataclass(frozen=True)
class HoursOfOperation:
    """Half-open daily operating window ``[from_min, to_min)`` in minutes.

    ``from_min > to_min`` means the window wraps midnight (e.g. 20:00 to
    10:00).  The full day is canonically ``(0, 1440)``.  ``from_min == to_min``
    is rejected: there is no empty window, and a full day must be written as
    ``(0, 1440)`` rather than ``(x, x)``.
    """

    from_min: int
    to_min: int

    def __post_init__(self) -> None:
        if not isinstance(self.from_min, int) or not isinstance(self.to_min, int):
            raise ValueError("minutes must be integers")
        if not 0 <= self.from_min < MINUTES_PER_DAY:
            raise ValueError(f"interval start out of range: {self.from_min}")
        if not 0 <= self.to_min <= MINUTES_PER_DAY:
            raise ValueError(f"interval end out of range: {self.to_min}")
        if self.from_min == self.to_min:
            raise ValueError("interval start and end must differ")

    @property
    def wraps(self) -> bool:
        return self.from_min > self.to_min

    def contains(self, minute: int) -> bool:
        """Membership of a minute-of-day in the (possibly wrapping) window."""
        if self.wraps:
            return minute >= self.from_min or minute < self.to_min
        return self.from_min <= minute < self.to_min

    def segments(self) -> tuple[tuple[int, int], ...]:
        """Decompose into non-wrapping half-open segments on [0, 1440).

        A wrapping window splits at midnight; an empty tail (``to_min == 0``)
        is dropped so every returned segment has nonzero length.
        """
        if not self.wraps:
            return ((self.from_min, self.to_min),)
        if self.to_min == 0:
            return ((self.from_min, MINUTES_PER_DAY),)
        return ((self.from_min, MINUTES_PER_DAY), (0, self.to_min))


def hours_overlap(a: HoursOfOperation, b: HoursOfOperation) -> bool:
    """True iff the two circular windows share nonzero time.

    Half-open semantics: windows that merely touch at an endpoint do not
    overlap.
    """
    for lo_a, hi_a in a.segments():
        for lo_b, hi_b in b.segments():
            if max(lo_a, lo_b) < min(hi_a, hi_b):
                return True
    return False


@dataclass(frozen=True)
class FrequencyBand:
    """Closed integer-hertz interval ``[low_hz, high_hz]``."""

    low_hz: int
    high_hz: int

    def __post_init__(self) -> None:
        if not isinstance(self.low_hz, int) or not isinstance(self.high_hz, int):
            raise ValueError("band edges must be integer hertz")
        if self.low_hz < 0:
            raise ValueError(f"band edge below zero: {self.low_hz}")
        if self.low_hz > self.high_hz:
            raise InvertedRange(f"band [{self.low_hz}, {self.high_hz}] is inverted")
        if self.high_hz > MAX_HZ:
            raise UpperBoundExceeded(f"band edge above {MAX_HZ} Hz: {self.high_hz}")

    @property
    def width_hz(self) -> int:
        return self.high_hz - self.low_hz

    def overlaps(self, other: FrequencyBand) -> bool:
        """Closed-interval intersection test (touching edges do overlap)."""
        return max(self.low_hz, other.low_hz) <= min(self.high_hz, other.high_hz)


def band_from_centre(centre_hz: int, bandwidth_hz: int) -> FrequencyBand:
    """Build a band from its centre and full width.

    Odd widths split floor/ceil around the centre; a lower edge that would
    fall below zero is clamped to 0 Hz.
    """
    if not isinstance(centre_hz, int) or not isinstance(bandwidth_hz, int):
        raise ValueError("centre and bandwidth must be integer hertz")
    if centre_hz < 0 or bandwidth_hz < 0:
        raise ValueError("centre and bandwidth must be non-negative")
    low = max(0, centre_hz - bandwidth_hz // 2)
    high = centre_hz + -(-bandwidth_hz // 2)
    return FrequencyBand(low, high)


def band_from_min_max(low_hz: int, high_hz: int) -> FrequencyBand:
    """Build a band from its explicit edges."""
    return FrequencyBand(low_hz, high_hz)


@dataclass(frozen=True)
class Transmitter:
    """One emitter: a unique name, an optional site, a daily window, a band."""

    name: str
    location: GeoPoint | None
    hours: HoursOfOperation
    band: FrequencyBand

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("transmitter name must be non-empty")
        # NUL cannot live in CSV or SQL TEXT; keep every surface consistent.
        if "\x00" in self.name:
            raise ValueError("transmitter name must not contain NUL")


@dataclass(frozen=True)
class Dataset:
    """An immutable, name-sorted collection of transmitters.

    Names must be unique; iteration order is ascending by name so every
    downstream result ordering is deterministic.
    """

    transmitters: tuple[Transmitter, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.transmitters, key=lambda t: t.name))
        names = [t.name for t in ordered]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate transmitter names: {dupes}")
        object.__setattr__(self, "transmitters", ordered)

    def __iter__(self):
        return iter(self.transmitters)

    def __len__(self) -> int:
        return len(self.transmitters)

    def by_name(self, name: str) -> Transmitter:
        for t in self.transmitters:
            if t.name == name:
                return t
        raise KeyError(name)
