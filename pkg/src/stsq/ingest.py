"""CSV import and export of transmitter datasets.

Import schema (header names are normative, order free)::

    name, latitude, longitude, hours, centre_frequency, bandwidth,
    min_frequency, max_frequency

* ``latitude``/``longitude`` take decimal degrees or DMS
  (``38°40'11.86''`` — degree/minute/second marks, ``"`` for seconds, or
  the ASCII fallbacks ``38d40m11.86s``).  A sign prefixes the whole
  coordinate.  Both cells empty means the transmitter has no location.
* ``hours`` is ``H:MM-H:MM`` or ``H:MM -- H:MM``; an end of ``24:00`` means
  midnight, and a start later than the end wraps midnight.
* Frequency cells take bare integer hertz or an SI-suffixed decimal
  (``900MHz``).  Exactly one of {centre+bandwidth, min+max} may be
  populated per row.

Import is row-tolerant: a bad row is skipped and reported (first faulty
field only, so each row appears at most once) and never aborts the file.
Row numbers are 1-based over data rows.  Export always writes the canonical
form — decimal degrees, ``H:MM`` hours, bare-hertz min/max — which
re-imports to an identical dataset.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from . import dsl
from .geo import DmsCoordinate, dms_to_decimal
from .model import (
    Dataset,
    FrequencyBand,
    GeoPoint,
    HoursOfOperation,
    Transmitter,
    band_from_centre,
    band_from_min_max,
)

HEADER = (
    "name",
    "latitude",
    "longitude",
    "hours",
    "centre_frequency",
    "bandwidth",
    "min_frequency",
    "max_frequency",
)


class MissingHeader(ValueError):
    """Header row absent or not the normative column set."""


@dataclass(frozen=True)
class RowError:
    row: int
    field: str
    message: str


@dataclass(frozen=True)
class ImportReport:
    imported: int
    errors: tuple[RowError, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


class _FieldError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


_DMS_RE = re.compile(
    r"([+-])?\s*(\d+)\s*[°d]\s*(\d+)\s*['m]\s*(\d+(?:\.\d+)?)\s*(?:''|\"|s)"
)
_DECIMAL_RE = re.compile(r"[+-]?(?:\d+(?:\.\d+)?|\.\d+)(?:[eE][+-]?\d+)?")
_HOURS_RE = re.compile(r"(\d{1,2}):(\d{2})\s*(?:--|-)\s*(\d{1,2}):(\d{2})")


def _parse_coordinate(cell: str, field: str) -> float:
    text = cell.strip()
    if _DECIMAL_RE.fullmatch(text):
        return float(text)
    m = _DMS_RE.fullmatch(text)
    if not m:
        raise _FieldError(field, f"not a decimal or DMS coordinate: {cell!r}")
    sign = -1 if m.group(1) == "-" else 1
    try:
        coordinate = DmsCoordinate(sign, int(m.group(2)), int(m.group(3)), float(m.group(4)))
    except ValueError as exc:
        raise _FieldError(field, str(exc)) from None
    return dms_to_decimal(coordinate)


def _parse_location(lat_cell: str, lon_cell: str) -> GeoPoint | None:
    lat_text, lon_text = lat_cell.strip(), lon_cell.strip()
    if not lat_text and not lon_text:
        return None
    if not lat_text or not lon_text:
        field = "latitude" if not lat_text else "longitude"
        raise _FieldError(field, "latitude and longitude must both be given or both empty")
    lat = _parse_coordinate(lat_text, "latitude")
    lon = _parse_coordinate(lon_text, "longitude")
    try:
        return GeoPoint(lat, lon)
    except ValueError as exc:
        field = "latitude" if not -90.0 <= lat <= 90.0 else "longitude"
        raise _FieldError(field, str(exc)) from None


def _minutes(hour_text: str, minute_text: str) -> int:
    minutes = int(minute_text)
    if minutes > 59:
        raise ValueError(f"minutes out of range: {minute_text}")
    return int(hour_text) * 60 + minutes


def _parse_hours(cell: str) -> HoursOfOperation:
    m = _HOURS_RE.fullmatch(cell.strip())
    if not m:
        raise _FieldError("hours", f"expected H:MM-H:MM, got {cell!r}")
    try:
        window = HoursOfOperation(_minutes(m.group(1), m.group(2)), _minutes(m.group(3), m.group(4)))
    except ValueError as exc:
        raise _FieldError("hours", str(exc)) from None
    return window


def _parse_frequency_cell(cell: str, field: str) -> int:
    text = cell.strip()
    if re.fullmatch(r"\d+", text):
        return int(text)
    try:
        return dsl.parse_frequency(text)
    except ValueError as exc:
        raise _FieldError(field, str(exc)) from None


def _parse_band(centre: str, bandwidth: str, low: str, high: str) -> FrequencyBand:
    has_centre = bool(centre.strip()) or bool(bandwidth.strip())
    has_edges = bool(low.strip()) or bool(high.strip())
    if has_centre and has_edges:
        raise _FieldError(
            "frequency", "ambiguous source: both centre/bandwidth and min/max populated"
        )
    if not has_centre and not has_edges:
        raise _FieldError("frequency", "no frequency given")
    try:
        if has_centre:
            if not centre.strip() or not bandwidth.strip():
                raise _FieldError(
                    "frequency", "centre_frequency and bandwidth must both be given"
                )
            return band_from_centre(
                _parse_frequency_cell(centre, "centre_frequency"),
                _parse_frequency_cell(bandwidth, "bandwidth"),
            )
        if not low.strip() or not high.strip():
            raise _FieldError("frequency", "min_frequency and max_frequency must both be given")
        return band_from_min_max(
            _parse_frequency_cell(low, "min_frequency"),
            _parse_frequency_cell(high, "max_frequency"),
        )
    except _FieldError:
        raise
    except ValueError as exc:
        raise _FieldError("frequency", str(exc)) from None


def import_csv(text: str) -> tuple[Dataset, ImportReport]:
    """Parse CSV text into a dataset plus a per-row error report."""
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise MissingHeader("empty input: no header row") from None
    if sorted(header) != sorted(HEADER):
        raise MissingHeader(
            f"header must contain exactly the columns {list(HEADER)}, got {header}"
        )
    index = {column: header.index(column) for column in HEADER}

    transmitters: list[Transmitter] = []
    seen: set[str] = set()
    errors: list[RowError] = []
    row_number = 0
    for cells in reader:
        if not cells:
            continue
        row_number += 1
        try:
            if len(cells) != len(HEADER):
                raise _FieldError("row", f"expected {len(HEADER)} cells, got {len(cells)}")
            name = cells[index["name"]]
            if not name:
                raise _FieldError("name", "name must be non-empty")
            if "\x00" in name:
                raise _FieldError("name", "name must not contain NUL")
            if name in seen:
                raise _FieldError("name", f"duplicate name {name!r}")
            location = _parse_location(cells[index["latitude"]], cells[index["longitude"]])
            hours = _parse_hours(cells[index["hours"]])
            band = _parse_band(
                cells[index["centre_frequency"]],
                cells[index["bandwidth"]],
                cells[index["min_frequency"]],
                cells[index["max_frequency"]],
            )
        except _FieldError as exc:
            errors.append(RowError(row_number, exc.field, exc.message))
            continue
        seen.add(name)
        transmitters.append(Transmitter(name, location, hours, band))

    return Dataset(tuple(transmitters)), ImportReport(len(transmitters), tuple(errors))


def _format_minutes(total: int) -> str:
    return f"{total // 60}:{total % 60:02d}"


def export_csv(d: Dataset) -> str:
    """Canonical CSV for a dataset; ``import_csv(export_csv(d))`` is identity."""
    out = io.StringIO(newline="")
    writer = csv.writer(out)
    writer.writerow(HEADER)
    for t in d:
        writer.writerow(
            [
                t.name,
                repr(t.location.lat) if t.location else "",
                repr(t.location.lon) if t.location else "",
                f"{_format_minutes(t.hours.from_min)}-{_format_minutes(t.hours.to_min)}",
                "",
                "",
                str(t.band.low_hz),
                str(t.band.high_hz),
            ]
        )
    return out.getvalue()
