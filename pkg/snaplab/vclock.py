"""
Region-attached vector clocks and realtime timestamp vectors.

Each region carries a clock of n counters with its local counter at its own
index. A process remembers the clock of the last region it accessed; on its
next access the two clocks are merged componentwise and the accessed region's
counter is incremented. Every access ticks the clock, reads included.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import LengthMismatch
from .model import Computation, EventId, RegionId, Snapshot, Time, most_recent_event

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VectorClock:
    """n non-negative counters; owner is the region the clock is attached to."""
    counters: tuple[int, ...]
    owner: Optional[RegionId] = None

    def __post_init__(self):
        object.__setattr__(self, 'counters', tuple(int(c) for c in self.counters))

    @classmethod
    def zero(cls, n: int, owner: Optional[RegionId] = None) -> VectorClock:
        return cls((0,) * n, owner)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.counters, dtype=np.int64)

    def __len__(self):
        return len(self.counters)

    def __getitem__(self, x: int) -> int:
        return self.counters[x]

    def __str__(self):
        return '[' + ','.join(str(c) for c in self.counters) + ']'


def _check_lengths(*clocks: VectorClock) -> int:
    lengths = {len(c) for c in clocks}
    if len(lengths) > 1:
        raise LengthMismatch(f"Vector clocks of different lengths: {sorted(lengths)}")
    return lengths.pop() if lengths else 0


def vc_update(
    region_clock: VectorClock,
    process_last_seen: VectorClock,
    owner: RegionId,
) -> VectorClock:
    """Componentwise max of both clocks, then the owner's counter + 1."""
    n = _check_lengths(region_clock, process_last_seen)
    if not 0 <= owner < n:
        raise LengthMismatch(f"Owner index {owner} outside clock of length {n}")
    merged = np.maximum(region_clock.as_array(), process_last_seen.as_array())
    merged[owner] += 1
    return VectorClock(tuple(merged.tolist()), owner)


def vc_less(ci: VectorClock, cj: VectorClock) -> bool:
    """Ci < Cj iff Ci <= Cj componentwise and Ci[x] < Cj[x] for some x."""
    _check_lengths(ci, cj)
    a, b = ci.as_array(), cj.as_array()
    return bool(np.all(a <= b) and np.any(a < b))


def global_time(clocks: Sequence[VectorClock]) -> VectorClock:
    """t_s = sup(C_1, ..., C_n)."""
    if not clocks:
        raise ValueError("global_time needs at least one clock")
    _check_lengths(*clocks)
    stacked = np.vstack([c.as_array() for c in clocks])
    return VectorClock(tuple(stacked.max(axis=0).tolist()))


def diagonal(clocks: Sequence[VectorClock]) -> tuple[int, ...]:
    """(C_1[1], ..., C_n[n])."""
    n = _check_lengths(*clocks)
    if len(clocks) != n:
        raise LengthMismatch(f"Expected one clock per region ({n}), got {len(clocks)}")
    return tuple(c[i] for i, c in enumerate(clocks))


def vc_consistent(clocks: Sequence[VectorClock]) -> bool:
    """A snapshot is consistent iff t_s equals the diagonal of its clocks."""
    return global_time(clocks).counters == diagonal(clocks)


@dataclass(frozen=True)
class ClockedTrace:
    """
    Clock values produced by replaying a computation under the update rule.

    Attributes:
        after: Region clock immediately after each event
        last_seen: Clock each process saw last, at the end of the computation
        final: Clock of every region at the end of the computation
    """
    after: dict[EventId, VectorClock]
    last_seen: tuple[VectorClock, ...]
    final: tuple[VectorClock, ...]


def build_clocked_trace(comp: Computation) -> ClockedTrace:
    """Replays comp and records every region clock value."""
    n = comp.region_count
    regions = [VectorClock.zero(n, r) for r in range(n)]
    processes = [VectorClock.zero(n) for _ in range(comp.process_count)]
    after = {}

    for e in comp.events:
        clock = vc_update(regions[e.r], processes[e.p], e.r)
        regions[e.r] = clock
        processes[e.p] = clock
        after[e.id] = clock

    return ClockedTrace(after, tuple(processes), tuple(regions))


def clock_snapshot(
    comp: Computation,
    s: Snapshot,
    trace: Optional[ClockedTrace] = None,
) -> list[VectorClock]:
    """Each region's clock as of event(r, s(r).t), or the zero clock."""
    trace = trace or build_clocked_trace(comp)
    clocks = []
    for r in range(comp.region_count):
        e = most_recent_event(comp, r, s(r).t)
        clocks.append(trace.after[e.id] if e else VectorClock.zero(comp.region_count, r))
    return clocks


def clock_report(clocks: Sequence[VectorClock]) -> dict:
    """Per-region clocks, global time and diagonal, for embedding in reports."""
    return {
        'clocks': [list(c.counters) for c in clocks],
        'global_time': list(global_time(clocks).counters),
        'diagonal': list(diagonal(clocks)),
        'consistent': vc_consistent(clocks),
    }


@dataclass(frozen=True)
class TimestampVector:
    """Per region, the rt of its most recent event (None before any event)."""
    stamps: tuple[Optional[Time], ...]

    def __len__(self):
        return len(self.stamps)


def current_time(comp: Computation, t: Time) -> TimestampVector:
    """The current time vector as seen at realtime t."""
    stamps = []
    for r in range(comp.region_count):
        e = most_recent_event(comp, r, t)
        stamps.append(e.rt if e else None)
    return TimestampVector(tuple(stamps))


def snapshot_timestamps(comp: Computation, s: Snapshot) -> TimestampVector:
    """Per region, the rt of the most recent event at its copy time."""
    stamps = []
    for r in range(comp.region_count):
        e = most_recent_event(comp, r, s(r).t)
        stamps.append(e.rt if e else None)
    return TimestampVector(tuple(stamps))


def rt_consistent(current: TimestampVector, snapshot_ts: TimestampVector) -> bool:
    """
    True iff the current time equals the snapshot's timestamps.

    Sufficient for quasi-instantaneous consistency, not necessary.
    """
    if len(current) != len(snapshot_ts):
        raise LengthMismatch(
            f"Timestamp vectors of different lengths: {len(current)} vs {len(snapshot_ts)}"
        )
    return current.stamps == snapshot_ts.stamps


def rt_check(comp: Computation, s: Snapshot) -> bool:
    """rt_consistent evaluated when the last region is copied."""
    end = max(s.times)
    return rt_consistent(current_time(comp, end), snapshot_timestamps(comp, s))
