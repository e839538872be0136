"""JSON-over-HTTP API for query evaluation, analytics, and dataset management.

The dataset lives in memory as an immutable snapshot.  Readers grab the
current snapshot reference; an import builds a whole new dataset and swaps
the reference atomically under a single writer lock, so concurrent reads
see either the old or the new dataset, never a mixture.  Import is
all-or-nothing: any row error leaves the snapshot untouched and returns the
report with status 422.

All error bodies share one envelope: ``{"error": {"path": ..., "message":
...}}`` (the 422 import response carries the row report alongside it).

Environment: STSQ_PORT (default 8080), STSQ_DATA (CSV loaded at startup),
STSQ_CORS_ORIGIN (allowed origin, default "*"), STSQ_GEOCODER_URL
(optional remote geocoder for /api/geocode; otherwise addresses resolve
against the loaded transmitter names).
"""

from __future__ import annotations

import json
import os
import threading

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import serialize
from .analytics import active_times, find_conflicts, find_gaps
from .evaluator import evaluate
from .geo import AddressNotFound, Geocoder, FixtureGeocoder, HttpGeocoder, ProviderUnavailable, geocode
from .ingest import MissingHeader, import_csv, export_csv
from .model import Dataset, FrequencyBand, GeoPoint, HoursOfOperation
from .query import MalformedJson, SchemaViolation, query_from_json
from .sqlgen import emit

MAX_QUERY_BODY = 1 << 20
MAX_IMPORT_BODY = 16 << 20


class _BadRequest(Exception):
    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message


class ServiceState:
    """Current dataset snapshot plus the single-writer import lock."""

    def __init__(self, dataset: Dataset, geocoder: Geocoder | None = None):
        self._dataset = dataset
        self._geocoder = geocoder
        self._write_lock = threading.Lock()

    @property
    def dataset(self) -> Dataset:
        return self._dataset

    def replace(self, dataset: Dataset) -> None:
        with self._write_lock:
            self._dataset = dataset

    @property
    def geocoder(self) -> Geocoder:
        if self._geocoder is None:
            self._geocoder = dataset_geocoder(self._dataset)
        return self._geocoder


def dataset_geocoder(dataset: Dataset) -> FixtureGeocoder:
    """Fixture geocoder resolving the loaded transmitter names to their sites."""
    return FixtureGeocoder(
        {t.name: t.location for t in dataset if t.location is not None}
    )


def _json_response(obj: dict, status: int = 200) -> Response:
    return Response(serialize.dumps(obj), status_code=status, media_type="application/json")


def _error(status: int, path: str, message: str, extra: dict | None = None) -> Response:
    body = serialize.error_obj(path, message)
    if extra:
        body.update(extra)
    return _json_response(body, status)


def _number(obj: dict, key: str) -> float:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _BadRequest(key, f"expected a number, got {value!r}")
    return float(value)


def _integer(obj: dict, key: str) -> int:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise _BadRequest(key, f"expected an integer, got {value!r}")
    return value


def _object(obj: dict, key: str) -> dict:
    value = obj.get(key)
    if not isinstance(value, dict):
        raise _BadRequest(key, "expected an object")
    return value


async def _read_json(request: Request, limit: int) -> dict:
    body = await request.body()
    if len(body) > limit:
        raise _BadRequest("__size__", f"body exceeds {limit} bytes")
    try:
        obj = json.loads(body)
    except (ValueError, UnicodeDecodeError) as exc:
        raise _BadRequest("body", f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise _BadRequest("body", "expected a JSON object")
    return obj


def create_app(
    dataset: Dataset | None = None,
    geocoder: Geocoder | None = None,
    cors_origin: str | None = None,
) -> FastAPI:
    state = ServiceState(dataset if dataset is not None else Dataset(), geocoder)
    app = FastAPI(title="stsq", docs_url=None, redoc_url=None)
    app.state.engine = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin or os.environ.get("STSQ_CORS_ORIGIN", "*")],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(StarletteHTTPException)
    async def _envelope_http_errors(request: Request, exc: StarletteHTTPException):
        return _error(exc.status_code, "request", str(exc.detail))

    @app.get("/api/transmitters")
    def transmitters() -> Response:
        return _json_response(serialize.transmitters_obj(state.dataset))

    @app.post("/api/query")
    async def run_query(request: Request) -> Response:
        body = await request.body()
        if len(body) > MAX_QUERY_BODY:
            return _error(413, "body", f"body exceeds {MAX_QUERY_BODY} bytes")
        try:
            q = query_from_json(body.decode("utf-8", errors="strict"))
        except UnicodeDecodeError:
            return _error(400, "body", "body is not UTF-8")
        except MalformedJson as exc:
            return _error(400, "body", str(exc))
        except SchemaViolation as exc:
            return _error(400, exc.path, exc.message)
        snapshot = state.dataset
        return _json_response(
            serialize.query_response_obj(evaluate(q, snapshot), emit(q))
        )

    @app.post("/api/gaps")
    async def gaps(request: Request) -> Response:
        try:
            obj = await _read_json(request, MAX_QUERY_BODY)
            window_obj = _object(obj, "window")
            during_obj = _object(obj, "during")
            try:
                window = FrequencyBand(
                    _integer(window_obj, "low_hz"), _integer(window_obj, "high_hz")
                )
            except ValueError as exc:
                raise _BadRequest("window", str(exc)) from None
            try:
                during = HoursOfOperation(
                    _integer(during_obj, "from_min"), _integer(during_obj, "to_min")
                )
            except ValueError as exc:
                raise _BadRequest("during", str(exc)) from None
        except _BadRequest as exc:
            if exc.path == "__size__":
                return _error(413, "body", exc.message)
            return _error(400, exc.path, exc.message)
        return _json_response(
            serialize.gap_report_obj(find_gaps(state.dataset, window, during))
        )

    @app.post("/api/conflicts")
    async def conflicts(request: Request) -> Response:
        try:
            obj = await _read_json(request, MAX_QUERY_BODY)
            radius = _number(obj, "radius_km")
            if not radius > 0:
                raise _BadRequest("radius_km", "radius must be positive")
        except _BadRequest as exc:
            if exc.path == "__size__":
                return _error(413, "body", exc.message)
            return _error(400, exc.path, exc.message)
        found, indeterminate = find_conflicts(state.dataset, radius)
        return _json_response(serialize.conflicts_obj(found, indeterminate))

    @app.post("/api/active-times")
    async def coverage(request: Request) -> Response:
        try:
            obj = await _read_json(request, MAX_QUERY_BODY)
            lat = _number(obj, "lat")
            lon = _number(obj, "lon")
            radius = _number(obj, "radius_km")
            try:
                centre = GeoPoint(lat, lon)
            except ValueError as exc:
                raise _BadRequest("lat", str(exc)) from None
            if not radius > 0:
                raise _BadRequest("radius_km", "radius must be positive")
        except _BadRequest as exc:
            if exc.path == "__size__":
                return _error(413, "body", exc.message)
            return _error(400, exc.path, exc.message)
        return _json_response(
            serialize.coverage_obj(active_times(state.dataset, centre, radius))
        )

    @app.post("/api/import")
    async def import_dataset(request: Request) -> Response:
        body = await request.body()
        if len(body) > MAX_IMPORT_BODY:
            return _error(413, "body", f"body exceeds {MAX_IMPORT_BODY} bytes")
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError:
            return _error(400, "body", "body is not UTF-8")
        try:
            new_dataset, report = import_csv(text)
        except MissingHeader as exc:
            return _error(400, "header", str(exc))
        if not report.ok:
            return _error(
                422,
                "body",
                f"{len(report.errors)} row error(s); dataset unchanged",
                extra={"report": serialize.import_report_obj(report)},
            )
        state.replace(new_dataset)
        return _json_response(serialize.import_report_obj(report))

    @app.get("/api/export")
    def export() -> Response:
        return Response(export_csv(state.dataset), media_type="text/csv")

    @app.get("/api/geocode")
    def geocode_address(address: str = "") -> Response:
        if not address.strip():
            return _error(400, "address", "address must be non-empty")
        try:
            point = geocode(address, state.geocoder)
        except AddressNotFound:
            return _error(404, "address", f"no location known for {address!r}")
        except ProviderUnavailable as exc:
            return _error(502, "address", str(exc))
        return _json_response({"lat": point.lat, "lon": point.lon})

    return app


def app_from_env() -> FastAPI:
    """Build the app from STSQ_* environment variables (serve path)."""
    dataset = Dataset()
    data_path = os.environ.get("STSQ_DATA")
    if data_path:
        with open(data_path, encoding="utf-8") as fh:
            dataset, report = import_csv(fh.read())
        if not report.ok:
            raise SystemExit(
                f"refusing to start: {len(report.errors)} row error(s) in {data_path}"
            )
    geocoder: Geocoder | None = None
    url = os.environ.get("STSQ_GEOCODER_URL")
    if url:
        geocoder = HttpGeocoder(url)
    return create_app(dataset, geocoder)
