"""Query abstract syntax and its canonical JSON codec.

A query is a non-empty chain of clauses joined by AND/OR connectors, each
clause being an include/exclude flag plus one predicate over name, radius,
hours, or frequency band.  AND binds tighter than OR; ``normalize`` makes
that precedence explicit as OR-joined groups of AND-joined clauses.

The JSON wire form (snake_case, keys in schema order)::

    {"clauses": [{"include": bool, "predicate":
         {"type": "name",   "value": str}
       | {"type": "within", "lat": num, "lon": num, "radius_km": num}
       | {"type": "active", "from_min": int, "to_min": int}
       | {"type": "band",   "low_hz": int, "high_hz": int}
     }, ...],
     "connectors": ["and" | "or", ...]}

``connectors`` always has exactly one fewer element than ``clauses``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Union

from .model import FrequencyBand, GeoPoint, HoursOfOperation


class MalformedJson(ValueError):
    """Input is not syntactically valid JSON."""


class SchemaViolation(ValueError):
    """Structurally valid JSON that does not satisfy the query schema."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


@dataclass(frozen=True)
class NameIs:
    """Exact, case-sensitive name equality."""

    value: str


@dataclass(frozen=True)
class WithinKm:
    """Great-circle distance from a centre at most radius_km (closed)."""

    centre: GeoPoint
    radius_km: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius_km) and self.radius_km > 0):
            raise ValueError(f"radius must be positive, got {self.radius_km!r}")


@dataclass(frozen=True)
class ActiveDuring:
    """Hours of operation overlap the given window in nonzero measure."""

    interval: HoursOfOperation


@dataclass(frozen=True)
class BandOverlaps:
    """Frequency band intersects the given band (closed intervals)."""

    band: FrequencyBand


Predicate = Union[NameIs, WithinKm, ActiveDuring, BandOverlaps]


@dataclass(frozen=True)
class Clause:
    """One query property with its polarity; include=False negates it."""

    predicate: Predicate
    include: bool = True


class Connector(enum.Enum):
    AND = "and"
    OR = "or"


@dataclass(frozen=True)
class Query:
    clauses: tuple[Clause, ...]
    connectors: tuple[Connector, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.clauses:
            raise ValueError("a query needs at least one clause")
        if len(self.connectors) != len(self.clauses) - 1:
            raise ValueError(
                f"{len(self.clauses)} clauses need {len(self.clauses) - 1} "
                f"connectors, got {len(self.connectors)}"
            )


def normalize(q: Query) -> tuple[tuple[Clause, ...], ...]:
    """Disjunctive normal form of the clause chain.

    Consecutive AND-joined clauses become one group; the groups are joined
    by OR.  Flattening the groups reproduces the original clause order.
    """
    groups: list[tuple[Clause, ...]] = []
    current = [q.clauses[0]]
    for connector, clause in zip(q.connectors, q.clauses[1:]):
        if connector is Connector.AND:
            current.append(clause)
        else:
            groups.append(tuple(current))
            current = [clause]
    groups.append(tuple(current))
    return tuple(groups)


def _predicate_to_obj(p: Predicate) -> dict:
    if isinstance(p, NameIs):
        return {"type": "name", "value": p.value}
    if isinstance(p, WithinKm):
        return {
            "type": "within",
            "lat": p.centre.lat,
            "lon": p.centre.lon,
            "radius_km": p.radius_km,
        }
    if isinstance(p, ActiveDuring):
        return {
            "type": "active",
            "from_min": p.interval.from_min,
            "to_min": p.interval.to_min,
        }
    if isinstance(p, BandOverlaps):
        return {"type": "band", "low_hz": p.band.low_hz, "high_hz": p.band.high_hz}
    raise TypeError(f"unknown predicate: {p!r}")


def query_to_obj(q: Query) -> dict:
    """Plain-dict form of a query, keys in schema order."""
    return {
        "clauses": [
            {"include": c.include, "predicate": _predicate_to_obj(c.predicate)}
            for c in q.clauses
        ],
        "connectors": [c.value for c in q.connectors],
    }


def query_to_json(q: Query) -> str:
    """Canonical JSON text; deterministic for identical queries."""
    return json.dumps(query_to_obj(q), separators=(",", ":"), ensure_ascii=False)


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise SchemaViolation(_join(path, key), "missing field")
    return obj[key]


def _as_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaViolation(path, f"expected a number, got {value!r}")
    return float(value)


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaViolation(path, f"expected an integer, got {value!r}")
    return value


def _predicate_from_obj(obj, path: str) -> Predicate:
    if not isinstance(obj, dict):
        raise SchemaViolation(path, "predicate must be an object")
    kind = _require(obj, "type", path)
    if kind == "name":
        value = _require(obj, "value", path)
        if not isinstance(value, str):
            raise SchemaViolation(f"{path}.value", "name must be a string")
        return NameIs(value)
    if kind == "within":
        lat = _as_number(_require(obj, "lat", path), f"{path}.lat")
        lon = _as_number(_require(obj, "lon", path), f"{path}.lon")
        radius = _as_number(_require(obj, "radius_km", path), f"{path}.radius_km")
        try:
            centre = GeoPoint(lat, lon)
        except ValueError as exc:
            raise SchemaViolation(f"{path}.lat", str(exc)) from exc
        try:
            return WithinKm(centre, radius)
        except ValueError as exc:
            raise SchemaViolation(f"{path}.radius_km", str(exc)) from exc
    if kind == "active":
        from_min = _as_int(_require(obj, "from_min", path), f"{path}.from_min")
        to_min = _as_int(_require(obj, "to_min", path), f"{path}.to_min")
        try:
            return ActiveDuring(HoursOfOperation(from_min, to_min))
        except ValueError as exc:
            raise SchemaViolation(f"{path}.from_min", str(exc)) from exc
    if kind == "band":
        low = _as_int(_require(obj, "low_hz", path), f"{path}.low_hz")
        high = _as_int(_require(obj, "high_hz", path), f"{path}.high_hz")
        try:
            return BandOverlaps(FrequencyBand(low, high))
        except ValueError as exc:
            raise SchemaViolation(f"{path}.low_hz", str(exc)) from exc
    raise SchemaViolation(f"{path}.type", f"unknown predicate type {kind!r}")


def query_from_obj(obj) -> Query:
    """Validate a plain-dict document and build the query it describes."""
    if not isinstance(obj, dict):
        raise SchemaViolation("", "document must be an object")
    clauses_obj = _require(obj, "clauses", "")
    if not isinstance(clauses_obj, list) or not clauses_obj:
        raise SchemaViolation("clauses", "must be a non-empty array")
    connectors_obj = _require(obj, "connectors", "")
    if not isinstance(connectors_obj, list):
        raise SchemaViolation("connectors", "must be an array")
    if len(connectors_obj) != len(clauses_obj) - 1:
        raise SchemaViolation(
            "connectors",
            f"expected {len(clauses_obj) - 1} connectors for "
            f"{len(clauses_obj)} clauses, got {len(connectors_obj)}",
        )

    clauses: list[Clause] = []
    for i, clause_obj in enumerate(clauses_obj):
        path = f"clauses[{i}]"
        if not isinstance(clause_obj, dict):
            raise SchemaViolation(path, "clause must be an object")
        include = clause_obj.get("include", True)
        if not isinstance(include, bool):
            raise SchemaViolation(f"{path}.include", "must be a boolean")
        predicate = _predicate_from_obj(
            _require(clause_obj, "predicate", path), f"{path}.predicate"
        )
        clauses.append(Clause(predicate, include))

    connectors: list[Connector] = []
    for i, raw in enumerate(connectors_obj):
        if raw not in ("and", "or"):
            raise SchemaViolation(f"connectors[{i}]", f"expected 'and' or 'or', got {raw!r}")
        connectors.append(Connector(raw))

    return Query(tuple(clauses), tuple(connectors))


def query_from_json(text: str) -> Query:
    """Parse canonical JSON into a query, or raise MalformedJson / SchemaViolation."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJson(str(exc)) from exc
    return query_from_obj(obj)
