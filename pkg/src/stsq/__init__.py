"""Spatial-temporal-spectral transmitter querying: engine, analytics, SQL,
HTTP service, and CLI."""

from .model import (
    Dataset,
    FrequencyBand,
    GeoPoint,
    HoursOfOperation,
    Transmitter,
    band_from_centre,
    band_from_min_max,
    hours_overlap,
)
from .query import (
    ActiveDuring,
    BandOverlaps,
    Clause,
    Connector,
    NameIs,
    Query,
    WithinKm,
    query_from_json,
    query_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "ActiveDuring",
    "BandOverlaps",
    "Clause",
    "Connector",
    "Dataset",
    "FrequencyBand",
    "GeoPoint",
    "HoursOfOperation",
    "NameIs",
    "Query",
    "Transmitter",
    "WithinKm",
    "band_from_centre",
    "band_from_min_max",
    "hours_overlap",
    "query_from_json",
    "query_to_json",
    "__version__",
]
