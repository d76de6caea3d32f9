"""
Base class for acquisition strategies.

A strategy instance is an acquisition plan: it carries its schedule
parameters and reads the ground truth at simulated times. Acquisition never
adds events to the computation.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from ..errors import InvalidConfig
from ..model import Computation, Copy, GroundTruth, RegionId, Snapshot, Time


@dataclass(frozen=True)
class BaseStrategy(ABC):
    """Abstract base class for acquisition plans."""

    name = "base"
    description = "Base strategy"

    @property
    @abstractmethod
    def start(self) -> Time:
        """Time at which the acquisition starts (the natural integrity tau)."""
        pass

    @abstractmethod
    def acquire(self, comp: Computation, gt: GroundTruth) -> Snapshot:
        """
        Takes a snapshot of comp.

        Returns:
            Snapshot: One (value, time) copy per region
        """
        pass

    def to_dict(self) -> dict:
        data = {'strategy': self.name}
        for key, value in asdict(self).items():
            data[key] = list(value) if isinstance(value, tuple) else value
        return data


def check_delay(delay: int) -> None:
    if delay < 1:
        raise InvalidConfig(f"per-region delay must be >= 1 tick, got {delay}")


def check_start(start: Time) -> None:
    if start < 0:
        raise InvalidConfig(f"start time must be >= 0, got {start}")


def resolve_order(order: Optional[Sequence[RegionId]], n: int) -> tuple[RegionId, ...]:
    """Validates a scan order; None means index order."""
    if order is None:
        return tuple(range(n))
    order = tuple(int(r) for r in order)
    if sorted(order) != list(range(n)):
        raise InvalidConfig(f"order {list(order)} is not a permutation of {n} regions")
    return order


def slot_times(order: Sequence[RegionId], start: Time, delay: int) -> dict[RegionId, Time]:
    """The i-th region in order is copied at start + (i + 1) * delay."""
    return {r: start + (i + 1) * delay for i, r in enumerate(order)}


def inject_fault(s: Snapshot, r: RegionId, delta: int = 1) -> Snapshot:
    """Returns s with region r's copied value perturbed by delta."""
    copies = list(s.copies)
    copies[r] = Copy(max(copies[r].v + delta, 0), copies[r].t)
    return Snapshot(tuple(copies))
