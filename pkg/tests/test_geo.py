from __future__ import annotations

import http.server
import json
import math
import threading

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stsq.geo import (
    EARTH_RADIUS_KM,
    AddressNotFound,
    DmsCoordinate,
    FixtureGeocoder,
    HttpGeocoder,
    ProviderUnavailable,
    decimal_to_dms,
    dms_to_decimal,
    geocode,
    haversine_km,
)
from stsq.model import GeoPoint
from tests import oracles
from tests.strategies import geo_points

MOBILE = GeoPoint(38.66996111111111, -90.11936944444444)
RAILWAY = GeoPoint(38.629311111111114, -90.23519166666667)


class TestDms:
    def test_positive_sample_coordinate(self):
        assert dms_to_decimal(DmsCoordinate(1, 38, 40, 11.86)) == pytest.approx(
            38.669961, abs=1e-6
        )

    def test_zero(self):
        assert dms_to_decimal(DmsCoordinate(1, 0, 0, 0.0)) == 0.0

    def test_negative_sample_coordinate(self):
        assert dms_to_decimal(DmsCoordinate(-1, 90, 14, 6.69)) == pytest.approx(
            -90.235192, abs=1e-6
        )

    def test_validation(self):
        with pytest.raises(ValueError):
            DmsCoordinate(1, 0, 60, 0.0)
        with pytest.raises(ValueError):
            DmsCoordinate(1, 0, 0, 60.0)
        with pytest.raises(ValueError):
            DmsCoordinate(2, 0, 0, 0.0)
        with pytest.raises(ValueError):
            DmsCoordinate(1, 180, 0, 0.1)

    @given(st.floats(min_value=-180, max_value=180, allow_nan=False))
    def test_round_trip(self, value):
        assert dms_to_decimal(decimal_to_dms(value)) == pytest.approx(value, abs=1e-6)


class TestHaversine:
    def test_identity(self):
        assert haversine_km(MOBILE, MOBILE) == 0.0

    def test_sample_pair_against_independent_oracle(self):
        got = haversine_km(MOBILE, RAILWAY)
        reference = oracles.law_of_cosines_km(MOBILE, RAILWAY)
        assert got == pytest.approx(11.027, abs=0.01)
        assert abs(got - reference) / reference < 0.005

    def test_antipodal(self):
        assert haversine_km(GeoPoint(0, 0), GeoPoint(0, 180)) == pytest.approx(
            20015.115, abs=0.01
        )

    @given(geo_points, geo_points)
    def test_symmetric(self, a, b):
        assert haversine_km(a, b) == haversine_km(b, a)

    @given(geo_points)
    def test_zero_on_identical(self, a):
        assert haversine_km(a, a) == 0.0

    @given(geo_points, geo_points)
    def test_bounded_by_half_circumference(self, a, b):
        assert 0.0 <= haversine_km(a, b) <= math.pi * EARTH_RADIUS_KM

    @given(geo_points, geo_points, geo_points)
    def test_triangle_inequality(self, a, b, c):
        assert haversine_km(a, c) <= haversine_km(a, b) + haversine_km(b, c) + 1e-6


ADELAIDE = GeoPoint(-34.9285, 138.6007)


class TestGeocode:
    def test_fixture_returns_stored_point_exactly(self):
        provider = FixtureGeocoder({"Adelaide": ADELAIDE})
        assert geocode("Adelaide", provider) == ADELAIDE

    def test_lookup_normalizes_case_and_whitespace(self):
        provider = FixtureGeocoder({"North   Adelaide": ADELAIDE})
        assert geocode("  north adelaide ", provider) == ADELAIDE

    def test_unknown_address(self):
        provider = FixtureGeocoder({})
        with pytest.raises(AddressNotFound):
            geocode("nowhere", provider)

    def test_empty_address_rejected_before_provider(self):
        class Exploding:
            def lookup(self, address):  # pragma: no cover - must not be called
                raise AssertionError("provider consulted for empty address")

        with pytest.raises(ValueError):
            geocode("   ", Exploding())


class _GeocodeHandler(http.server.BaseHTTPRequestHandler):
    def do_GET(self):
        if "known" in self.path:
            body = json.dumps({"lat": -34.9285, "lon": 138.6007}).encode()
            self.send_response(200)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
        elif "broken" in self.path:
            body = b"{}"
            self.send_response(200)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
        else:
            self.send_response(404)
            self.end_headers()

    def log_message(self, *args):
        pass


@pytest.fixture(scope="module")
def geocode_server():
    server = http.server.HTTPServer(("127.0.0.1", 0), _GeocodeHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}/geocode"
    server.shutdown()


class TestHttpGeocoder:
    def test_found(self, geocode_server):
        point = HttpGeocoder(geocode_server).lookup("known place")
        assert point == ADELAIDE

    def test_not_found(self, geocode_server):
        with pytest.raises(AddressNotFound):
            HttpGeocoder(geocode_server).lookup("missing")

    def test_malformed_response(self, geocode_server):
        with pytest.raises(ProviderUnavailable):
            HttpGeocoder(geocode_server).lookup("broken place")

    def test_unreachable(self):
        with pytest.raises(ProviderUnavailable):
            HttpGeocoder("http://127.0.0.1:1/geocode", timeout_s=0.2).lookup("x")
