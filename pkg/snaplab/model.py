"""
Domain types for computations on memory regions.

A computation is a set of events performed by processes on regions, each
event stamped with an injective realtime tick. The ground truth m(r, t) is
materialized from the computation by replay and stored as change points.
Snapshots map each region to the value copied and the time it was copied.

Time convention: m(r, t) includes the effect of an event with rt == t.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

from .errors import InvalidComputation

logger = logging.getLogger(__name__)

RegionId = int
ProcessId = int
EventId = int
Value = int
Time = int
Cut = frozenset  # frozenset[EventId]


class EventKind(str, Enum):
    """Observability class of an event."""

    NON_MODIFYING = 'NonModifying'
    MODIFYING = 'Modifying'
    UNIQUELY_MODIFYING = 'UniquelyModifying'

    @property
    def writes(self) -> bool:
        return self is not EventKind.NON_MODIFYING


@dataclass(frozen=True)
class Event:
    """An access e = (p, r) at realtime rt."""
    id: EventId
    p: ProcessId
    r: RegionId
    rt: Time
    kind: EventKind
    written: Optional[Value] = None

    def __str__(self):
        label = f"e{self.id}(p{self.p},r{self.r},t={self.rt}"
        if self.written is not None:
            label += f",w={self.written}"
        return label + ")"


@dataclass(frozen=True)
class Computation:
    """
    A computation (E, ->) with realtime stamps.

    The causal order is derived (see snaplab.causality), not stored.

    Args:
        region_count: Number of regions n
        process_count: Number of processes
        initial_values: Value of every region at time 0
        events: Events sorted strictly ascending by rt
    """
    region_count: int
    process_count: int
    initial_values: tuple[Value, ...]
    events: tuple[Event, ...] = ()

    def __post_init__(self):
        # accept lists from callers, store tuples
        object.__setattr__(self, 'initial_values', tuple(self.initial_values))
        object.__setattr__(self, 'events', tuple(self.events))

        if self.region_count < 1:
            raise InvalidComputation(f"region_count must be >= 1, got {self.region_count}")
        if self.process_count < 1:
            raise InvalidComputation(f"process_count must be >= 1, got {self.process_count}")
        if len(self.initial_values) != self.region_count:
            raise InvalidComputation(
                f"Expected {self.region_count} initial values, got {len(self.initial_values)}"
            )
        if any(v < 0 for v in self.initial_values):
            raise InvalidComputation("Initial values must be non-negative")

        seen_ids = set()
        last_rt = -1
        for e in self.events:
            if e.id in seen_ids:
                raise InvalidComputation(f"Duplicate event id {e.id}")
            seen_ids.add(e.id)
            if e.rt <= last_rt:
                raise InvalidComputation(
                    f"Events must be sorted strictly ascending by rt ({e} after rt={last_rt})"
                )
            last_rt = e.rt
            if not 0 <= e.r < self.region_count:
                raise InvalidComputation(f"{e} references unknown region {e.r}")
            if not 0 <= e.p < self.process_count:
                raise InvalidComputation(f"{e} references unknown process {e.p}")
            if e.kind.writes and (e.written is None or e.written < 0):
                raise InvalidComputation(f"{e} is {e.kind.value} but carries no written value")
            if not e.kind.writes and e.written is not None:
                raise InvalidComputation(f"{e} is NonModifying but carries a written value")

    @cached_property
    def by_id(self) -> dict[EventId, Event]:
        return {e.id: e for e in self.events}

    @cached_property
    def region_events(self) -> tuple[tuple[Event, ...], ...]:
        """Events of every region, in rt order."""
        per_region: list[list[Event]] = [[] for _ in range(self.region_count)]
        for e in self.events:
            per_region[e.r].append(e)
        return tuple(tuple(events) for events in per_region)

    @cached_property
    def process_events(self) -> tuple[tuple[Event, ...], ...]:
        """Events of every process, in rt order."""
        per_process: list[list[Event]] = [[] for _ in range(self.process_count)]
        for e in self.events:
            per_process[e.p].append(e)
        return tuple(tuple(events) for events in per_process)

    @cached_property
    def _region_rts(self) -> tuple[list[Time], ...]:
        return tuple([e.rt for e in events] for events in self.region_events)

    @property
    def event_ids(self) -> list[EventId]:
        return [e.id for e in self.events]

    @property
    def last_time(self) -> Time:
        """rt of the last event, or 0 for an empty computation."""
        return self.events[-1].rt if self.events else 0

    def __len__(self):
        return len(self.events)

    def __repr__(self):
        return (
            f"Computation(regions={self.region_count}, processes={self.process_count}, "
            f"events={len(self.events)})"
        )


@dataclass(frozen=True)
class GroundTruth:
    """
    Piecewise-constant m: R x T -> V.

    changes[r] is an ascending tuple of (time, value) change points starting
    at (0, initial value).
    """
    changes: tuple[tuple[tuple[Time, Value], ...], ...]

    @cached_property
    def _times(self) -> tuple[list[Time], ...]:
        return tuple([t for t, _ in points] for points in self.changes)

    @property
    def region_count(self) -> int:
        return len(self.changes)

    def change_times(self) -> list[Time]:
        """All change-point times over all regions, ascending and distinct."""
        return sorted({t for points in self.changes for t, _ in points})

    def changes_between(self, r: RegionId, start: Time, end: Time) -> list[tuple[Time, Value]]:
        """Change points of region r with start < time <= end."""
        times = self._times[r]
        lo = bisect_right(times, start)
        hi = bisect_right(times, end)
        return list(self.changes[r][lo:hi])


class Copy(NamedTuple):
    """One region's entry in a snapshot: copied value and copy time."""
    v: Value
    t: Time


@dataclass(frozen=True)
class Snapshot:
    """
    s: R -> V x T, complete over all regions.

    Usage:
        s = Snapshot.from_pairs([(0, 0), (1, 2)])
        s(0).v, s(0).t
    """
    copies: tuple[Copy, ...]

    def __post_init__(self):
        object.__setattr__(self, 'copies', tuple(Copy(*c) for c in self.copies))
        if not self.copies:
            raise ValueError("A snapshot must cover at least one region")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Value, Time]]) -> Snapshot:
        return cls(tuple(Copy(v, t) for v, t in pairs))

    def __call__(self, r: RegionId) -> Copy:
        return self.copies[r]

    def __getitem__(self, r: RegionId) -> Copy:
        return self.copies[r]

    def __len__(self):
        return len(self.copies)

    def __iter__(self):
        return iter(self.copies)

    @property
    def values(self) -> list[Value]:
        return [c.v for c in self.copies]

    @property
    def times(self) -> list[Time]:
        return [c.t for c in self.copies]

    def __repr__(self):
        body = ', '.join(f"r{r}:({c.v},{c.t})" for r, c in enumerate(self.copies))
        return f"Snapshot({body})"


def replay(comp: Computation) -> GroundTruth:
    """
    Materializes the ground truth m from the event list.

    Raises:
        InvalidComputation: If a Modifying event writes the current value or
            a UniquelyModifying event repeats a value of its region.
    """
    current = list(comp.initial_values)
    history: list[set[Value]] = [{v} for v in comp.initial_values]
    changes: list[list[tuple[Time, Value]]] = [[(0, v)] for v in comp.initial_values]

    for e in comp.events:
        if not e.kind.writes:
            continue
        if e.written == current[e.r]:
            raise InvalidComputation(f"{e} writes the value region r{e.r} already holds")
        if e.kind is EventKind.UNIQUELY_MODIFYING and e.written in history[e.r]:
            raise InvalidComputation(f"{e} repeats a value previously stored in r{e.r}")
        current[e.r] = e.written
        history[e.r].add(e.written)
        if changes[e.r][-1][0] == e.rt:
            # only possible for an event at tick 0
            changes[e.r][-1] = (e.rt, e.written)
        else:
            changes[e.r].append((e.rt, e.written))

    logger.debug("Replayed %d events over %d regions", len(comp), comp.region_count)
    return GroundTruth(tuple(tuple(points) for points in changes))


def value_at(gt: GroundTruth, r: RegionId, t: Time) -> Value:
    """m(r, t): the value of region r after every event with rt <= t applied."""
    idx = bisect_right(gt._times[r], t) - 1
    return gt.changes[r][max(idx, 0)][1]


def most_recent_event(comp: Computation, r: RegionId, t: Time) -> Optional[Event]:
    """event(r, t): the event on r with the largest rt <= t, or None."""
    idx = bisect_right(comp._region_rts[r], t)
    if idx == 0:
        return None
    return comp.region_events[r][idx - 1]


def induced_cut(comp: Computation, s: Snapshot) -> Cut:
    """All events on each region r with rt <= s(r).t."""
    if len(s) != comp.region_count:
        raise ValueError(
            f"Snapshot covers {len(s)} regions, computation has {comp.region_count}"
        )
    members = set()
    for r, events in enumerate(comp.region_events):
        idx = bisect_right(comp._region_rts[r], s(r).t)
        members.update(e.id for e in events[:idx])
    return frozenset(members)


def realtime_prefix(comp: Computation, t: Time) -> Cut:
    """All events with rt <= t."""
    return frozenset(e.id for e in comp.events if e.rt <= t)
