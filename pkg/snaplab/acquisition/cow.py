"""
Copy-on-write acquisition.

After the acquisition starts at tau, a background scan copies regions in
order. A write to a region that has not been copied yet is intercepted: the
region is copied first, then the write proceeds. Reads are never intercepted.
Every copied value therefore equals the region's value at tau.

Within one tick the interception copy is ordered before the write, so the
copy records the last tick at which the copied value was live (rt - 1).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from ..model import Computation, Copy, GroundTruth, RegionId, Snapshot, Time, value_at
from .base import BaseStrategy, check_delay, check_start, resolve_order, slot_times

logger = logging.getLogger(__name__)


def acquire_cow(
    comp: Computation,
    gt: GroundTruth,
    start: Time,
    order: Optional[Sequence[RegionId]] = None,
    delay: int = 1,
) -> Snapshot:
    """
    Copy-on-write snapshot started at `start`.

    Args:
        comp: The computation whose writes may be intercepted
        gt: Ground truth to read
        start: Acquisition start tau
        order: Background copy order (default: index order)
        delay: Ticks between consecutive background copies
    """
    check_delay(delay)
    slots = slot_times(resolve_order(order, comp.region_count), start, delay)
    copies = []
    for r in range(comp.region_count):
        t = slots[r]
        for e in comp.region_events[r]:
            if e.rt <= start or not e.kind.writes:
                continue
            if e.rt <= t:
                t = e.rt - 1
                logger.debug("Write %s intercepted, r%d copied first", e, r)
            break
        copies.append(Copy(value_at(gt, r, start), t))
    return Snapshot(tuple(copies))


@dataclass(frozen=True)
class CopyOnWritePlan(BaseStrategy):
    """Background scan with write interception."""

    at: Time = 0
    order: Optional[tuple[RegionId, ...]] = None
    delay: int = 1

    name = "cow"
    description = "Copy-on-write: no write lands on an uncopied region"

    def __post_init__(self):
        if self.order is not None:
            object.__setattr__(self, 'order', tuple(int(r) for r in self.order))
        check_start(self.at)
        check_delay(self.delay)

    @property
    def start(self) -> Time:
        return self.at

    def acquire(self, comp: Computation, gt: GroundTruth) -> Snapshot:
        return acquire_cow(comp, gt, self.at, self.order, self.delay)
