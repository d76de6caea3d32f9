"""
Frozen acquisition: the system is paused and every region is copied at once.
"""

from dataclasses import dataclass

from ..model import Computation, Copy, GroundTruth, Snapshot, Time, value_at
from .base import BaseStrategy, check_start


def acquire_frozen(gt: GroundTruth, t: Time) -> Snapshot:
    """Copies every region at time t."""
    return Snapshot(tuple(Copy(value_at(gt, r, t), t) for r in range(gt.region_count)))


@dataclass(frozen=True)
class FrozenPlan(BaseStrategy):
    """Instantaneous snapshot at time `at`."""

    at: Time = 0

    name = "frozen"
    description = "All regions copied at the same time"

    def __post_init__(self):
        check_start(self.at)

    @property
    def start(self) -> Time:
        return self.at

    def acquire(self, comp: Computation, gt: GroundTruth) -> Snapshot:
        return acquire_frozen(gt, self.at)
