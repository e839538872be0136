"""In-memory query evaluation; the reference semantics for every other path.

A predicate over a transmitter yields true, false, or unknown (None).
Unknown arises in exactly one place: a spatial predicate applied to a
transmitter without a location.  Unknown collapses to "not selected" under
BOTH polarities of a clause, so negating a spatial clause never manufactures
matches from missing coordinates.
"""

from __future__ import annotations

from . import geo
from .model import Dataset, Transmitter, hours_overlap
from .query import ActiveDuring, BandOverlaps, Clause, NameIs, Predicate, Query, WithinKm, normalize


def eval_predicate(p: Predicate, t: Transmitter) -> bool | None:
    """Three-valued predicate evaluation; None means unknown."""
    if isinstance(p, NameIs):
        return t.name == p.value
    if isinstance(p, WithinKm):
        if t.location is None:
            return None
        return geo.haversine_km(p.centre, t.location) <= p.radius_km
    if isinstance(p, ActiveDuring):
        return hours_overlap(p.interval, t.hours)
    if isinstance(p, BandOverlaps):
        return p.band.overlaps(t.band)
    raise TypeError(f"unknown predicate: {p!r}")


def eval_clause(c: Clause, t: Transmitter) -> bool:
    """Clause outcome with polarity applied; unknown is false either way."""
    outcome = eval_predicate(c.predicate, t)
    if outcome is None:
        return False
    return outcome if c.include else not outcome


def matches(q: Query, t: Transmitter) -> bool:
    """True iff some AND-group of the normalized query holds for t."""
    return any(
        all(eval_clause(c, t) for c in group) for group in normalize(q)
    )


def evaluate(q: Query, d: Dataset) -> tuple[Transmitter, ...]:
    """All matching transmitters, in the dataset's name-ascending order."""
    return tuple(t for t in d if matches(q, t))
