"""
Scanning acquisition on a running system.

A sequential scan copies regions one after another in a fixed order, one
region every `delay` ticks after `start`. A priority scan first copies the
regions deemed important for analysis and then proceeds in index order.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from ..errors import InvalidConfig
from ..model import Computation, Copy, GroundTruth, RegionId, Snapshot, Time, value_at
from .base import BaseStrategy, check_delay, check_start, resolve_order, slot_times


def acquire_sequential(
    gt: GroundTruth,
    start: Time,
    order: Optional[Sequence[RegionId]] = None,
    delay: int = 1,
) -> Snapshot:
    """
    Copies regions in `order`, the i-th at start + (i + 1) * delay.

    Args:
        gt: Ground truth to read
        start: Acquisition start tau
        order: Permutation of regions (default: index order)
        delay: Ticks between consecutive copies
    """
    check_delay(delay)
    slots = slot_times(resolve_order(order, gt.region_count), start, delay)
    return Snapshot(
        tuple(Copy(value_at(gt, r, slots[r]), slots[r]) for r in range(gt.region_count))
    )


def priority_order(priority: Sequence[RegionId], n: int) -> tuple[RegionId, ...]:
    """priority regions first, then the remaining regions in index order."""
    priority = tuple(int(r) for r in priority)
    if len(set(priority)) != len(priority):
        raise InvalidConfig(f"priority regions must be distinct, got {list(priority)}")
    if any(not 0 <= r < n for r in priority):
        raise InvalidConfig(f"priority regions {list(priority)} outside {n} regions")
    return priority + tuple(r for r in range(n) if r not in priority)


def acquire_priority(
    gt: GroundTruth,
    start: Time,
    priority: Sequence[RegionId] = (),
    delay: int = 1,
) -> Snapshot:
    """Sequential scan over priority regions followed by the rest."""
    return acquire_sequential(gt, start, priority_order(priority, gt.region_count), delay)


@dataclass(frozen=True)
class SequentialPlan(BaseStrategy):
    """Linear scan in a fixed order."""

    at: Time = 0
    order: Optional[tuple[RegionId, ...]] = None
    delay: int = 1

    name = "sequential"
    description = "Regions copied one by one in a fixed order"

    def __post_init__(self):
        if self.order is not None:
            object.__setattr__(self, 'order', tuple(int(r) for r in self.order))
        check_start(self.at)
        check_delay(self.delay)

    @property
    def start(self) -> Time:
        return self.at

    def acquire(self, comp: Computation, gt: GroundTruth) -> Snapshot:
        return acquire_sequential(gt, self.at, self.order, self.delay)


@dataclass(frozen=True)
class PriorityPlan(BaseStrategy):
    """Scan that starts with the regions listed in `priority`."""

    at: Time = 0
    priority: tuple[RegionId, ...] = ()
    delay: int = 1

    name = "priority"
    description = "Important regions first, then sequential"

    def __post_init__(self):
        object.__setattr__(self, 'priority', tuple(int(r) for r in self.priority))
        check_start(self.at)
        check_delay(self.delay)

    @property
    def start(self) -> Time:
        return self.at

    def acquire(self, comp: Computation, gt: GroundTruth) -> Snapshot:
        return acquire_priority(gt, self.at, self.priority, self.delay)
