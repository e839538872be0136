"""Textual query language.

Grammar (keywords case-insensitive, whitespace ignored between tokens)::

    query      := clause { connector clause }
    connector  := "and" | "or"
    clause     := [ "not" ] predicate
    predicate  := "name" "=" quoted-string
                | "within" decimal "km" "of" "(" signed-decimal "," signed-decimal ")"
                | "active" time ".." time
                | "freq" freq ( ".." freq | "+/-" freq )
    time       := digit{1,2} ":" digit{2}          -- hours:minutes of day
    freq       := decimal unit                     -- unit: Hz|kHz|MHz|GHz|THz

Coordinates are ``(lat, lon)`` decimal degrees.  ``not`` flips a clause to
exclude.  ``freq c +/- t`` is sugar for the band ``[c - t, c + t]`` (lower
edge clamped at 0 Hz); the parsed AST always carries a plain band.
Frequencies are exact integer hertz: a mantissa that does not resolve to a
whole number of hertz is rejected.

``parse`` is total: every input yields a Query or a ParseError carrying the
character offset and what was expected there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import MAX_HZ, FrequencyBand, GeoPoint, HoursOfOperation
from .query import (
    ActiveDuring,
    BandOverlaps,
    Clause,
    Connector,
    NameIs,
    Predicate,
    Query,
    WithinKm,
)


class ParseError(ValueError):
    def __init__(self, offset: int, expected: str):
        super().__init__(f"at offset {offset}: expected {expected}")
        self.offset = offset
        self.expected = expected


class UnknownUnit(ValueError):
    """Frequency text without a recognized SI unit suffix."""


class NonIntegralHertz(ValueError):
    """Frequency text that resolves to a fraction of a hertz."""


class OutOfRange(ValueError):
    """Frequency above the 1 THz ceiling."""


_UNIT_EXPONENTS = {"hz": 0, "khz": 3, "mhz": 6, "ghz": 9, "thz": 12}
_UNIT_NAMES = {0: "Hz", 3: "kHz", 6: "MHz", 9: "GHz", 12: "THz"}

_KEYWORDS = frozenset({"and", "or", "not", "name", "within", "km", "of", "active", "freq"})


def _scale_decimal(mantissa: str, exponent: int) -> int | None:
    """Exact integer value of ``mantissa x 10^exponent``, or None if fractional."""
    if "." in mantissa:
        whole, frac = mantissa.split(".", 1)
    else:
        whole, frac = mantissa, ""
    if len(frac) > exponent:
        if any(ch != "0" for ch in frac[exponent:]):
            return None
        frac = frac[:exponent]
    digits = (whole + frac).lstrip("0") or "0"
    return int(digits) * 10 ** (exponent - len(frac))


def parse_frequency(text: str) -> int:
    """Parse e.g. ``"2.564GHz"`` into exact integer hertz."""
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([A-Za-z]*)\s*", text)
    if not m:
        raise UnknownUnit(f"unparseable frequency: {text!r}")
    mantissa, unit = m.group(1), m.group(2)
    if unit.lower() not in _UNIT_EXPONENTS:
        raise UnknownUnit(f"missing or unknown frequency unit in {text!r}")
    hz = _scale_decimal(mantissa, _UNIT_EXPONENTS[unit.lower()])
    if hz is None:
        raise NonIntegralHertz(f"{text!r} is not a whole number of hertz")
    if hz > MAX_HZ:
        raise OutOfRange(f"{text!r} is above {MAX_HZ} Hz")
    return hz


# ---------------------------------------------------------------------------
# Tokenizer


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "ident" | "string" | "symbol" | "eof"
    text: str
    offset: int


_NUMBER_RE = re.compile(r"\d+(?:\.\d+)?(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_SYMBOLS = ("..", "+/-", "=", "(", ")", ",", ":", "-", "+")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            start = i
            value, i = _read_string(text, i)
            tokens.append(_Token("string", value, start))
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            tokens.append(_Token("number", m.group(), i))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(_Token("ident", m.group(), i))
            i = m.end()
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(_Token("symbol", sym, i))
                i += len(sym)
                break
        else:
            raise ParseError(i, f"a valid token (found {ch!r})")
    tokens.append(_Token("eof", "", n))
    return tokens


def _read_string(text: str, start: int) -> tuple[str, int]:
    # start points at the opening quote
    out: list[str] = []
    i = start + 1
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            if i + 1 >= len(text):
                raise ParseError(len(text), "an escaped character")
            nxt = text[i + 1]
            if nxt not in ('"', "\\"):
                raise ParseError(i + 1, "an escape: \\\" or \\\\")
            out.append(nxt)
            i += 2
        elif ch == '"':
            return "".join(out), i + 1
        else:
            out.append(ch)
            i += 1
    raise ParseError(len(text), 'a closing "')


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text.lower() == word

    def expect_keyword(self, word: str) -> _Token:
        if not self.at_keyword(word):
            raise ParseError(self.peek().offset, f"'{word}'")
        return self.advance()

    def expect_symbol(self, sym: str) -> _Token:
        tok = self.peek()
        if tok.kind != "symbol" or tok.text != sym:
            raise ParseError(tok.offset, f"'{sym}'")
        return self.advance()

    def query(self) -> Query:
        clauses = [self.clause()]
        connectors: list[Connector] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if self.at_keyword("and"):
                self.advance()
                connectors.append(Connector.AND)
            elif self.at_keyword("or"):
                self.advance()
                connectors.append(Connector.OR)
            else:
                raise ParseError(tok.offset, "'and', 'or', or end of query")
            clauses.append(self.clause())
        return Query(tuple(clauses), tuple(connectors))

    def clause(self) -> Clause:
        include = True
        if self.at_keyword("not"):
            self.advance()
            include = False
        return Clause(self.predicate(), include)

    def predicate(self) -> Predicate:
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(tok.offset, "a predicate: name, within, active, or freq")
        word = tok.text.lower()
        if word == "name":
            self.advance()
            self.expect_symbol("=")
            value = self.peek()
            if value.kind != "string":
                raise ParseError(value.offset, "a quoted name")
            self.advance()
            return NameIs(value.text)
        if word == "within":
            self.advance()
            radius_tok = self.peek()
            radius = self.decimal("a radius in km")
            self.expect_keyword("km")
            self.expect_keyword("of")
            self.expect_symbol("(")
            lat_tok = self.peek()
            lat = self.signed_decimal("a latitude")
            self.expect_symbol(",")
            lon_tok = self.peek()
            lon = self.signed_decimal("a longitude")
            self.expect_symbol(")")
            try:
                centre = GeoPoint(lat, lon)
            except ValueError:
                # distinguish which coordinate is at fault for the offset
                bad = lat_tok.offset if not -90.0 <= lat <= 90.0 else lon_tok.offset
                raise ParseError(bad, "a coordinate in range") from None
            try:
                return WithinKm(centre, radius)
            except ValueError:
                raise ParseError(radius_tok.offset, "a positive radius") from None
        if word == "active":
            self.advance()
            start_tok = self.peek()
            from_min = self.time_of_day()
            self.expect_symbol("..")
            to_min = self.time_of_day()
            try:
                interval = HoursOfOperation(from_min, to_min)
            except ValueError as exc:
                raise ParseError(start_tok.offset, f"a valid time window ({exc})") from None
            return ActiveDuring(interval)
        if word == "freq":
            self.advance()
            low = self.frequency()
            tok = self.peek()
            if tok.kind == "symbol" and tok.text == "..":
                self.advance()
                high_tok = self.peek()
                high = self.frequency()
                if high < low:
                    raise ParseError(high_tok.offset, "a band upper edge at or above the lower edge")
                return BandOverlaps(FrequencyBand(low, high))
            if tok.kind == "symbol" and tok.text == "+/-":
                self.advance()
                tol_tok = self.peek()
                tol = self.frequency()
                if low + tol > MAX_HZ:
                    raise ParseError(tol_tok.offset, f"a band within {MAX_HZ} Hz")
                return BandOverlaps(FrequencyBand(max(0, low - tol), low + tol))
            raise ParseError(tok.offset, "'..' or '+/-'")
        raise ParseError(tok.offset, "a predicate: name, within, active, or freq")

    def decimal(self, what: str) -> float:
        tok = self.peek()
        if tok.kind != "number":
            raise ParseError(tok.offset, what)
        self.advance()
        return float(tok.text)

    def signed_decimal(self, what: str) -> float:
        tok = self.peek()
        sign = 1.0
        if tok.kind == "symbol" and tok.text in ("-", "+"):
            self.advance()
            sign = -1.0 if tok.text == "-" else 1.0
        return sign * self.decimal(what)

    def time_of_day(self) -> int:
        hour_tok = self.peek()
        if hour_tok.kind != "number" or not re.fullmatch(r"\d{1,2}", hour_tok.text):
            raise ParseError(hour_tok.offset, "a time as H:MM or HH:MM")
        self.advance()
        self.expect_symbol(":")
        min_tok = self.peek()
        if min_tok.kind != "number" or not re.fullmatch(r"\d{2}", min_tok.text):
            raise ParseError(min_tok.offset, "two-digit minutes")
        self.advance()
        hours, minutes = int(hour_tok.text), int(min_tok.text)
        if minutes > 59:
            raise ParseError(min_tok.offset, "minutes below 60")
        total = hours * 60 + minutes
        if total > 1440:
            raise ParseError(hour_tok.offset, "a time of day up to 24:00")
        return total

    def frequency(self) -> int:
        num_tok = self.peek()
        if num_tok.kind != "number":
            raise ParseError(num_tok.offset, "a frequency like 90MHz")
        if "e" in num_tok.text or "E" in num_tok.text:
            raise ParseError(num_tok.offset, "a plain decimal frequency (no exponent)")
        self.advance()
        unit_tok = self.peek()
        if unit_tok.kind != "ident" or unit_tok.text.lower() not in _UNIT_EXPONENTS:
            raise ParseError(unit_tok.offset, "a frequency unit: Hz, kHz, MHz, GHz, or THz")
        self.advance()
        hz = _scale_decimal(num_tok.text, _UNIT_EXPONENTS[unit_tok.text.lower()])
        if hz is None:
            raise ParseError(num_tok.offset, "a whole number of hertz")
        if hz > MAX_HZ:
            raise ParseError(num_tok.offset, f"a frequency at most {MAX_HZ} Hz")
        return hz


def parse(text: str) -> Query:
    """Parse DSL text into a Query; raises ParseError on any fault."""
    return _Parser(text).query()


# ---------------------------------------------------------------------------
# Pretty-printer


def format_hz(value: int) -> str:
    """Render integer hertz with the largest SI prefix that stays exact."""
    if value == 0:
        return "0Hz"
    exponent = 0
    for candidate in (12, 9, 6, 3):
        if value >= 10**candidate:
            exponent = candidate
            break
    scale = 10**exponent
    whole, frac = divmod(value, scale)
    if frac == 0:
        mantissa = str(whole)
    else:
        mantissa = f"{whole}.{str(frac).zfill(exponent).rstrip('0')}"
    return f"{mantissa}{_UNIT_NAMES[exponent]}"


def _format_minutes(total: int) -> str:
    return f"{total // 60:02d}:{total % 60:02d}"


def _escape_name(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


def _print_predicate(p: Predicate) -> str:
    if isinstance(p, NameIs):
        return f'name = "{_escape_name(p.value)}"'
    if isinstance(p, WithinKm):
        return (
            f"within {p.radius_km!r} km of ({p.centre.lat!r}, {p.centre.lon!r})"
        )
    if isinstance(p, ActiveDuring):
        return (
            f"active {_format_minutes(p.interval.from_min)}"
            f"..{_format_minutes(p.interval.to_min)}"
        )
    if isinstance(p, BandOverlaps):
        return f"freq {format_hz(p.band.low_hz)}..{format_hz(p.band.high_hz)}"
    raise TypeError(f"unknown predicate: {p!r}")


def print_query(q: Query) -> str:
    """Canonical text for a query; ``parse(print_query(q)) == q``."""
    parts = []
    for i, clause in enumerate(q.clauses):
        if i:
            parts.append(q.connectors[i - 1].value)
        text = _print_predicate(clause.predicate)
        parts.append(f"not {text}" if not clause.include else text)
    return " ".join(parts)
