"""SQL generation for queries, plus the interpreter used to cross-check it.

The relational schema is one table::

    transmitters(name TEXT PRIMARY KEY,
                 latitude DOUBLE NULL, longitude DOUBLE NULL,
                 hours_from_min INTEGER, hours_to_min INTEGER,
                 freq_low_hz BIGINT, freq_high_hz BIGINT)

``emit`` produces one parameterized SELECT with positional ``$n``
placeholders; user values never appear inline in the text.  The per-predicate
templates here are normative for this project (see README).  Stored hours
rows may wrap midnight just like query windows, so the time template spells
out all four wrap/non-wrap combinations.

``interpret`` executes an emitted statement against an in-memory dataset by
parsing the SQL text from scratch, with SQL three-valued logic for NULL
latitude/longitude.  It is deliberately a second, independent execution path:
it never touches the query AST or the evaluator.
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass
from typing import Callable

from .model import Dataset, Transmitter
from .query import (
    ActiveDuring,
    BandOverlaps,
    Clause,
    NameIs,
    Query,
    WithinKm,
)


class UnsupportedSql(ValueError):
    """Statement text outside the grammar this module emits."""


@dataclass(frozen=True)
class SqlStatement:
    text: str
    params: tuple


_COLUMNS = (
    "name",
    "latitude",
    "longitude",
    "hours_from_min",
    "hours_to_min",
    "freq_low_hz",
    "freq_high_hz",
)

_SELECT_PREFIX = f"SELECT {', '.join(_COLUMNS)} FROM transmitters WHERE "
_ORDER_SUFFIX = " ORDER BY name ASC"

# Circular overlap of the stored window [f, t) and query window [F, T),
# either of which may wrap midnight (start > end).
_TIME_TEMPLATE = (
    "(hours_from_min < hours_to_min AND {F} < {T}"
    " AND hours_from_min < {T} AND {F} < hours_to_min)"
    " OR (hours_from_min < hours_to_min AND {F} > {T}"
    " AND ({F} < hours_to_min OR hours_from_min < {T}))"
    " OR (hours_from_min > hours_to_min AND {F} < {T}"
    " AND (hours_from_min < {T} OR {F} < hours_to_min))"
    " OR (hours_from_min > hours_to_min AND {F} > {T})"
)

_DISTANCE_TEMPLATE = (
    "2 * 6371.0088 * ASIN(SQRT("
    "SIN(RADIANS(latitude - {lat}) / 2) * SIN(RADIANS(latitude - {lat}) / 2)"
    " + COS(RADIANS({lat})) * COS(RADIANS(latitude))"
    " * SIN(RADIANS(longitude - {lon}) / 2) * SIN(RADIANS(longitude - {lon}) / 2)"
    "))"
)


def _clause_sql(clause: Clause, add: Callable[[object], str]) -> str:
    p = clause.predicate
    if isinstance(p, NameIs):
        expr = f"name = {add(p.value)}"
    elif isinstance(p, BandOverlaps):
        low_ph = add(p.band.low_hz)
        high_ph = add(p.band.high_hz)
        expr = f"freq_low_hz <= {high_ph} AND freq_high_hz >= {low_ph}"
    elif isinstance(p, ActiveDuring):
        expr = _TIME_TEMPLATE.format(
            F=add(p.interval.from_min), T=add(p.interval.to_min)
        )
    elif isinstance(p, WithinKm):
        distance = _DISTANCE_TEMPLATE.format(lat=add(p.centre.lat), lon=add(p.centre.lon))
        radius_ph = add(p.radius_km)
        # The NULL guard stays outside the negation so that rows without a
        # location never match a spatial clause of either polarity.
        if clause.include:
            return f"(latitude IS NOT NULL AND {distance} <= {radius_ph})"
        return f"(latitude IS NOT NULL AND NOT ({distance} <= {radius_ph}))"
    else:
        raise TypeError(f"unknown predicate: {p!r}")
    return f"({expr})" if clause.include else f"(NOT ({expr}))"


def emit(q: Query) -> SqlStatement:
    """Deterministic parameterized SELECT equivalent to the query."""
    params: list = []

    def add(value) -> str:
        params.append(value)
        return f"${len(params)}"

    parts: list[str] = []
    for i, clause in enumerate(q.clauses):
        if i:
            parts.append(f" {q.connectors[i - 1].value.upper()} ")
        parts.append(_clause_sql(clause, add))
    return SqlStatement(_SELECT_PREFIX + "".join(parts) + _ORDER_SUFFIX, tuple(params))


# ---------------------------------------------------------------------------
# Interpreter


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<ph>\$\d+)|(?P<ident>[A-Za-z_]+)"
    r"|(?P<op><=|>=|<>|<|>|=|\(|\)|,|\*|/|\+|-))"
)

_Value = object  # str | int | float | bool | None
_Fn = Callable[[dict, tuple], _Value]


def _asin_clamped(x: float) -> float:
    # Rounding can push the haversine operand a hair outside [-1, 1].
    return math.asin(min(1.0, max(-1.0, x)))


_FUNCTIONS = {
    "RADIANS": math.radians,
    "SIN": math.sin,
    "COS": math.cos,
    "SQRT": math.sqrt,
    "ASIN": _asin_clamped,
}

_COMPARATORS = {
    "<=": operator.le,
    ">=": operator.ge,
    "<": operator.lt,
    ">": operator.gt,
    "=": operator.eq,
    "<>": operator.ne,
}


def _tokenize_sql(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise UnsupportedSql(f"unrecognized SQL at offset {pos}: {text[pos:pos + 20]!r}")
            break
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("ph"):
            tokens.append(("ph", m.group("ph")))
        elif m.group("ident"):
            tokens.append(("ident", m.group("ident")))
        else:
            tokens.append(("op", m.group("op")))
    tokens.append(("eof", ""))
    return tokens


class _SqlParser:
    """Recursive-descent compiler from emitted SQL text to row closures."""

    def __init__(self, text: str, param_count: int):
        self.tokens = _tokenize_sql(text)
        self.pos = 0
        self.param_count = param_count

    def peek(self) -> tuple[str, str]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        if tok[0] != "eof":
            self.pos += 1
        return tok

    def accept_word(self, word: str) -> bool:
        kind, text = self.peek()
        if kind == "ident" and text.upper() == word:
            self.advance()
            return True
        return False

    def expect_word(self, word: str) -> None:
        if not self.accept_word(word):
            raise UnsupportedSql(f"expected {word}, found {self.peek()[1]!r}")

    def expect_op(self, op: str) -> None:
        kind, text = self.peek()
        if kind != "op" or text != op:
            raise UnsupportedSql(f"expected {op!r}, found {text!r}")
        self.advance()

    def statement(self) -> _Fn:
        self.expect_word("SELECT")
        for i, column in enumerate(_COLUMNS):
            if i:
                self.expect_op(",")
            kind, text = self.advance()
            if kind != "ident" or text != column:
                raise UnsupportedSql(f"unexpected column {text!r}")
        self.expect_word("FROM")
        self.expect_word("TRANSMITTERS")
        self.expect_word("WHERE")
        condition = self.or_expr()
        self.expect_word("ORDER")
        self.expect_word("BY")
        self.expect_word("NAME")
        self.expect_word("ASC")
        if self.peek()[0] != "eof":
            raise UnsupportedSql(f"trailing tokens: {self.peek()[1]!r}")
        return condition

    def or_expr(self) -> _Fn:
        parts = [self.and_expr()]
        while self.accept_word("OR"):
            parts.append(self.and_expr())
        if len(parts) == 1:
            return parts[0]

        def run(row, params):
            pending_null = False
            for part in parts:
                value = part(row, params)
                if value is True:
                    return True
                if value is None:
                    pending_null = True
            return None if pending_null else False

        return run

    def and_expr(self) -> _Fn:
        parts = [self.not_expr()]
        while self.accept_word("AND"):
            parts.append(self.not_expr())
        if len(parts) == 1:
            return parts[0]

        def run(row, params):
            pending_null = False
            for part in parts:
                value = part(row, params)
                if value is False:
                    return False
                if value is None:
                    pending_null = True
            return None if pending_null else True

        return run

    def not_expr(self) -> _Fn:
        if self.accept_word("NOT"):
            inner = self.not_expr()

            def run(row, params):
                value = inner(row, params)
                return None if value is None else not value

            return run
        return self.comparison()

    def comparison(self) -> _Fn:
        left = self.additive()
        kind, text = self.peek()
        if kind == "ident" and text.upper() == "IS":
            self.advance()
            self.expect_word("NOT")
            self.expect_word("NULL")
            return lambda row, params: left(row, params) is not None
        if kind == "op" and text in _COMPARATORS:
            self.advance()
            op = _COMPARATORS[text]
            right = self.additive()

            def run(row, params):
                a = left(row, params)
                b = right(row, params)
                if a is None or b is None:
                    return None
                return op(a, b)

            return run
        return left

    def additive(self) -> _Fn:
        node = self.multiplicative()
        while True:
            kind, text = self.peek()
            if kind == "op" and text in ("+", "-"):
                self.advance()
                rhs = self.multiplicative()
                node = self._arith(node, rhs, operator.add if text == "+" else operator.sub)
            else:
                return node

    def multiplicative(self) -> _Fn:
        node = self.unary()
        while True:
            kind, text = self.peek()
            if kind == "op" and text in ("*", "/"):
                self.advance()
                rhs = self.unary()
                node = self._arith(node, rhs, operator.mul if text == "*" else operator.truediv)
            else:
                return node

    @staticmethod
    def _arith(left: _Fn, right: _Fn, op) -> _Fn:
        def run(row, params):
            a = left(row, params)
            b = right(row, params)
            if a is None or b is None:
                return None
            return op(a, b)

        return run

    def unary(self) -> _Fn:
        kind, text = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            inner = self.unary()
            return lambda row, params: None if (v := inner(row, params)) is None else -v
        return self.primary()

    def primary(self) -> _Fn:
        kind, text = self.advance()
        if kind == "num":
            value = float(text) if "." in text else int(text)
            return lambda row, params: value
        if kind == "ph":
            index = int(text[1:])
            if not 1 <= index <= self.param_count:
                raise UnsupportedSql(f"placeholder {text} out of range")
            return lambda row, params: params[index - 1]
        if kind == "op" and text == "(":
            inner = self.or_expr()
            self.expect_op(")")
            return inner
        if kind == "ident":
            upper = text.upper()
            if upper in _FUNCTIONS:
                fn = _FUNCTIONS[upper]
                self.expect_op("(")
                arg = self.additive()
                self.expect_op(")")

                def run(row, params):
                    value = arg(row, params)
                    return None if value is None else fn(value)

                return run
            if text in _COLUMNS:
                return lambda row, params: row[text]
            raise UnsupportedSql(f"unknown identifier {text!r}")
        raise UnsupportedSql(f"unexpected token {text!r}")


def _row(t: Transmitter) -> dict:
    return {
        "name": t.name,
        "latitude": t.location.lat if t.location else None,
        "longitude": t.location.lon if t.location else None,
        "hours_from_min": t.hours.from_min,
        "hours_to_min": t.hours.to_min,
        "freq_low_hz": t.band.low_hz,
        "freq_high_hz": t.band.high_hz,
    }


def interpret(s: SqlStatement, d: Dataset) -> tuple[Transmitter, ...]:
    """Execute an emitted statement over an in-memory dataset.

    Only the grammar produced by :func:`emit` is accepted; anything else
    raises UnsupportedSql.  A WHERE outcome of NULL is treated as not-true,
    exactly as a SQL engine would.
    """
    condition = _SqlParser(s.text, len(s.params)).statement()
    selected = tuple(
        t for t in d if condition(_row(t), s.params) is True
    )
    return selected
