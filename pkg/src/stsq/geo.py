"""Geodesy and geocoding: DMS conversion, great-circle distance, providers.

Distances are great circles on a sphere of radius 6371.0088 km (the IUGG
mean earth radius).  The haversine here is written operation-for-operation
like the inline SQL distance expression the emitter produces, so the two
execution paths agree bit-for-bit at radius boundaries.
"""

from __future__ import annotations

import json
import math
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from typing import Protocol

from .model import GeoPoint

EARTH_RADIUS_KM = 6371.0088


class AddressNotFound(LookupError):
    """The provider has no location for the given address."""


class ProviderUnavailable(RuntimeError):
    """The provider could not be reached or gave an unusable response."""


@dataclass(frozen=True)
class DmsCoordinate:
    """Degrees-minutes-seconds coordinate with an explicit overall sign."""

    sign: int
    degrees: int
    minutes: int
    seconds: float

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if self.degrees < 0:
            raise ValueError("degrees must be non-negative")
        if not 0 <= self.minutes <= 59:
            raise ValueError(f"minutes out of range: {self.minutes}")
        if not 0 <= self.seconds < 60:
            raise ValueError(f"seconds out of range: {self.seconds}")
        if self.degrees + self.minutes / 60 + self.seconds / 3600 > 180:
            raise ValueError("coordinate magnitude above 180 degrees")


def dms_to_decimal(d: DmsCoordinate) -> float:
    """Decimal degrees for a DMS coordinate; the sign applies to the whole value."""
    return d.sign * (d.degrees + d.minutes / 60 + d.seconds / 3600)


def decimal_to_dms(value: float) -> DmsCoordinate:
    """Decompose decimal degrees into DMS. Round-trips within 1e-6 degrees."""
    sign = -1 if value < 0 else 1
    magnitude = abs(value)
    degrees = int(magnitude)
    rem_minutes = (magnitude - degrees) * 60
    minutes = int(rem_minutes)
    seconds = (rem_minutes - minutes) * 60
    # Float residue can push seconds to 60.0 exactly; carry upward.
    if seconds >= 60:
        seconds = 0.0
        minutes += 1
    if minutes >= 60:
        minutes = 0
        degrees += 1
    return DmsCoordinate(sign, degrees, minutes, seconds)


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in kilometres between two points.

    The argument under asin is clamped at 1.0: near-antipodal inputs can
    round a hair above the asin domain.
    """
    s_lat = math.sin(math.radians(b.lat - a.lat) / 2)
    s_lon = math.sin(math.radians(b.lon - a.lon) / 2)
    h = (
        s_lat * s_lat
        + math.cos(math.radians(a.lat)) * math.cos(math.radians(b.lat)) * s_lon * s_lon
    )
    return 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(min(1.0, h)))


class Geocoder(Protocol):
    """Address resolution provider. Implementations must tolerate concurrent calls."""

    def lookup(self, address: str) -> GeoPoint:
        """Return the point for an address or raise AddressNotFound /
        ProviderUnavailable."""
        ...


def _normalize_address(address: str) -> str:
    return " ".join(address.split()).casefold()


class FixtureGeocoder:
    """In-memory geocoder backed by a fixed address table.

    Lookup is case-insensitive after collapsing runs of whitespace, so
    ``"  North   Adelaide "`` finds an entry stored as ``"north adelaide"``.
    """

    def __init__(self, entries: dict[str, GeoPoint]):
        self._entries = {_normalize_address(k): v for k, v in entries.items()}

    def lookup(self, address: str) -> GeoPoint:
        try:
            return self._entries[_normalize_address(address)]
        except KeyError:
            raise AddressNotFound(address) from None


class HttpGeocoder:
    """Adapter for a remote HTTP geocoding endpoint.

    Contract (specific to this adapter, not part of any public geocoding
    API): ``GET {base_url}?address=<urlencoded>`` answering
    ``200 {"lat": <num>, "lon": <num>}`` or ``404`` for unknown addresses.
    Configure the base URL via the STSQ_GEOCODER_URL environment variable.
    """

    def __init__(self, base_url: str, timeout_s: float = 10.0):
        self._base_url = base_url
        self._timeout_s = timeout_s

    def lookup(self, address: str) -> GeoPoint:
        url = f"{self._base_url}?{urllib.parse.urlencode({'address': address})}"
        try:
            with urllib.request.urlopen(url, timeout=self._timeout_s) as resp:
                payload = json.loads(resp.read().decode("utf-8"))
        except urllib.error.HTTPError as exc:
            if exc.code == 404:
                raise AddressNotFound(address) from exc
            raise ProviderUnavailable(f"geocoder answered HTTP {exc.code}") from exc
        except (urllib.error.URLError, TimeoutError, ValueError) as exc:
            raise ProviderUnavailable(str(exc)) from exc
        try:
            return GeoPoint(float(payload["lat"]), float(payload["lon"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ProviderUnavailable(f"malformed geocoder response: {payload!r}") from exc


def geocode(address: str, provider: Geocoder) -> GeoPoint:
    """Resolve an address through a provider.

    The address must be non-empty (after stripping); the provider is never
    consulted for a blank string.
    """
    if not address or not address.strip():
        raise ValueError("address must be non-empty")
    return provider.lookup(address)
