from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stsq.dsl import (
    NonIntegralHertz,
    OutOfRange,
    ParseError,
    UnknownUnit,
    format_hz,
    parse,
    parse_frequency,
    print_query,
)
from stsq.model import FrequencyBand, GeoPoint, HoursOfOperation
from stsq.query import (
    ActiveDuring,
    BandOverlaps,
    Clause,
    Connector,
    NameIs,
    Query,
    WithinKm,
)
from tests.strategies import queries


class TestParseFrequency:
    def test_megahertz(self):
        assert parse_frequency("900MHz") == 900_000_000

    def test_gigahertz_decimal(self):
        assert parse_frequency("2.564GHz") == 2_564_000_000

    def test_fractional_hertz_rejected(self):
        with pytest.raises(NonIntegralHertz):
            parse_frequency("1.5Hz")

    def test_trailing_zero_fraction_ok(self):
        assert parse_frequency("2.0Hz") == 2
        assert parse_frequency("0.001MHz") == 1_000

    def test_case_insensitive_units(self):
        assert parse_frequency("1khz") == parse_frequency("1kHz") == 1_000

    def test_unknown_unit(self):
        with pytest.raises(UnknownUnit):
            parse_frequency("5parsecs")
        with pytest.raises(UnknownUnit):
            parse_frequency("90")

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            parse_frequency("1.1THz")


class TestParse:
    def test_tolerance_desugars_to_band(self):
        q = parse("freq 90MHz +/- 1MHz")
        assert q == Query(
            (Clause(BandOverlaps(FrequencyBand(89_000_000, 91_000_000))),)
        )

    def test_tolerance_clamps_low_edge(self):
        q = parse("freq 1kHz +/- 2kHz")
        assert q.clauses[0].predicate.band == FrequencyBand(0, 3_000)

    def test_radius_and_hours_conjunction(self):
        q = parse("within 10 km of (38.6293, -90.2352) and active 01:00..03:00")
        assert q.connectors == (Connector.AND,)
        first, second = q.clauses
        assert first == Clause(WithinKm(GeoPoint(38.6293, -90.2352), 10.0))
        assert second == Clause(ActiveDuring(HoursOfOperation(60, 180)))

    def test_not_prefix_excludes(self):
        q = parse("not freq 90MHz..100MHz")
        assert q == Query(
            (Clause(BandOverlaps(FrequencyBand(90_000_000, 100_000_000)), include=False),)
        )

    def test_name_clause(self):
        q = parse('name = "Stadium"')
        assert q.clauses[0].predicate == NameIs("Stadium")

    def test_name_escapes(self):
        q = parse(r'name = "say \"hi\" \\ there"')
        assert q.clauses[0].predicate == NameIs('say "hi" \\ there')

    def test_keywords_case_insensitive(self):
        q = parse('NOT Name = "x" AND active 00:00..24:00')
        assert q.clauses[0].include is False
        assert q.connectors == (Connector.AND,)

    def test_missing_unit_is_parse_error(self):
        with pytest.raises(ParseError) as excinfo:
            parse("freq 90")
        assert excinfo.value.offset == 7

    def test_error_carries_offset_and_expectation(self):
        with pytest.raises(ParseError) as excinfo:
            parse("within ten km of (0, 0)")
        assert excinfo.value.offset == 7
        assert "radius" in excinfo.value.expected

    def test_inverted_band_rejected(self):
        with pytest.raises(ParseError):
            parse("freq 100MHz..90MHz")

    def test_trailing_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse('name = "x" name = "y"')

    def test_wrapping_hours_accepted(self):
        q = parse("active 20:00..10:00")
        assert q.clauses[0].predicate.interval == HoursOfOperation(1200, 600)

    def test_equal_hours_rejected(self):
        with pytest.raises(ParseError):
            parse("active 10:00..10:00")


class TestFormatHz:
    @pytest.mark.parametrize(
        ("value", "text"),
        [
            (0, "0Hz"),
            (999, "999Hz"),
            (1_000, "1kHz"),
            (1_500, "1.5kHz"),
            (5_032, "5.032kHz"),
            (90_000_000, "90MHz"),
            (899_998_500, "899.9985MHz"),
            (406_500_000, "406.5MHz"),
            (2_564_000_000, "2.564GHz"),
            (10**12, "1THz"),
            (999_999_999_999, "999.999999999GHz"),
        ],
    )
    def test_rendering(self, value, text):
        assert format_hz(value) == text

    @given(st.integers(0, 10**12))
    def test_format_parse_identity(self, value):
        assert parse_frequency(format_hz(value)) == value


class TestPrint:
    def test_band_rendering(self):
        q = Query((Clause(BandOverlaps(FrequencyBand(90_000_000, 100_000_000))),))
        assert print_query(q) == "freq 90MHz..100MHz"

    def test_not_prefix(self):
        q = Query((Clause(NameIs("x"), include=False),))
        assert print_query(q) == 'not name = "x"'

    def test_full_day(self):
        q = Query((Clause(ActiveDuring(HoursOfOperation(0, 1440))),))
        assert print_query(q) == "active 00:00..24:00"

    @given(queries())
    def test_round_trip(self, q):
        assert parse(print_query(q)) == q


class TestTotality:
    @given(st.text(max_size=60))
    def test_arbitrary_text_never_crashes(self, text):
        try:
            parse(text)
        except ParseError as exc:
            assert 0 <= exc.offset <= len(text) + 1

    @given(queries(), st.integers(0, 2**32))
    def test_mutated_valid_queries_never_crash(self, q, seed):
        import random

        text = list(print_query(q))
        rng = random.Random(seed)
        for _ in range(rng.randrange(1, 4)):
            pos = rng.randrange(len(text))
            text[pos] = rng.choice('abc019 ."()km:,+/-')
        try:
            parse("".join(text))
        except ParseError:
            pass
