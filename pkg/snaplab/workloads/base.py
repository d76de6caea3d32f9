"""
Base class and configuration for workload generators.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..errors import InvalidConfig
from ..model import Computation, Event, EventKind, ProcessId, RegionId, Value

logger = logging.getLogger(__name__)

# values drawn by AllModifying writes; small so that reverts happen
MODIFYING_DOMAIN = 4


class KindRegime(str, Enum):
    """Which event kinds a workload produces."""

    ALL_UNIQUELY_MODIFYING = 'unique'
    ALL_MODIFYING = 'modifying'
    MIXED_WITH_READS = 'mixed'

    @classmethod
    def parse(cls, name: str) -> KindRegime:
        aliases = {
            'alluniquelymodifying': cls.ALL_UNIQUELY_MODIFYING,
            'allmodifying': cls.ALL_MODIFYING,
            'mixedwithreads': cls.MIXED_WITH_READS,
        }
        key = name.lower().replace('_', '').replace('-', '')
        for regime in cls:
            if regime.value == key:
                return regime
        if key in aliases:
            return aliases[key]
        available = ', '.join(r.value for r in cls)
        raise InvalidConfig(f"Unknown regime '{name}'. Available: {available}")

    @property
    def has_reads(self) -> bool:
        return self is KindRegime.MIXED_WITH_READS


@dataclass(frozen=True)
class WorkloadConfig:
    """
    Parameters of one generated computation.

    Args:
        region_count: Number of regions n (one per list node for linked_list)
        process_count: Number of simulated processes
        event_count: Number of events to generate
        regime: Event-kind regime
        read_fraction: Probability of a read under the mixed regime
        seed: 64-bit seed of the generator
        workload: Registered workload name ('random', 'linked_list')
        node_count: List length for linked_list (defaults to region_count)
        initial_values: Region values at time 0 (defaults to all 0)
    """
    region_count: int = 2
    process_count: int = 2
    event_count: int = 10
    regime: KindRegime = KindRegime.ALL_UNIQUELY_MODIFYING
    read_fraction: float = 0.0
    seed: int = 0
    workload: str = 'random'
    node_count: Optional[int] = None
    initial_values: Optional[tuple[Value, ...]] = None

    def __post_init__(self):
        if isinstance(self.regime, str) and not isinstance(self.regime, KindRegime):
            object.__setattr__(self, 'regime', KindRegime.parse(self.regime))
        if self.initial_values is not None:
            object.__setattr__(self, 'initial_values', tuple(self.initial_values))

        if self.region_count < 1:
            raise InvalidConfig(f"region_count must be >= 1, got {self.region_count}")
        if self.process_count < 1:
            raise InvalidConfig(f"process_count must be >= 1, got {self.process_count}")
        if self.event_count < 0:
            raise InvalidConfig(f"event_count must be >= 0, got {self.event_count}")
        if not 0.0 <= float(self.read_fraction) <= 1.0:
            raise InvalidConfig(f"read_fraction must lie in [0, 1], got {self.read_fraction}")
        if not 0 <= self.seed < 2**64:
            raise InvalidConfig(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.node_count is not None and self.node_count != self.region_count:
            raise InvalidConfig(
                f"linked_list needs one region per node: node_count={self.node_count}, "
                f"region_count={self.region_count}"
            )
        if self.initial_values is not None and len(self.initial_values) != self.region_count:
            raise InvalidConfig(
                f"Expected {self.region_count} initial values, got {len(self.initial_values)}"
            )

    @property
    def initial(self) -> tuple[Value, ...]:
        return self.initial_values or (0,) * self.region_count

    def to_dict(self) -> dict:
        data = asdict(self)
        data['regime'] = self.regime.value
        data['read_fraction'] = float(self.read_fraction)
        if self.initial_values is not None:
            data['initial_values'] = list(self.initial_values)
        return data


class EventLog:
    """
    Collects events for one computation.

    Stamps events from a global tick counter starting at 1 and chooses
    written values according to the regime.
    """

    def __init__(self, config: WorkloadConfig, rng: np.random.Generator):
        self.config = config
        self.rng = rng
        self.events: list[Event] = []
        self._current = list(config.initial)
        self._highest = list(config.initial)

    def __len__(self):
        return len(self.events)

    @property
    def full(self) -> bool:
        return len(self.events) >= self.config.event_count

    def draw_read(self) -> bool:
        """Whether the next access is a read, per the regime."""
        if not self.config.regime.has_reads:
            return False
        return bool(self.rng.random() < float(self.config.read_fraction))

    def read(self, p: ProcessId, r: RegionId) -> Event:
        return self._append(p, r, EventKind.NON_MODIFYING, None)

    def write(self, p: ProcessId, r: RegionId) -> Event:
        if self.config.regime is KindRegime.ALL_MODIFYING:
            choices = [v for v in range(MODIFYING_DOMAIN) if v != self._current[r]]
            value = int(choices[self.rng.integers(len(choices))])
            kind = EventKind.MODIFYING
        else:
            value = self._highest[r] + 1
            kind = EventKind.UNIQUELY_MODIFYING
        self._current[r] = value
        self._highest[r] = max(self._highest[r], value)
        return self._append(p, r, kind, value)

    def _append(self, p, r, kind, value) -> Event:
        tick = len(self.events) + 1
        e = Event(id=tick, p=int(p), r=int(r), rt=tick, kind=kind, written=value)
        self.events.append(e)
        logger.debug("Generated %s", e)
        return e

    def build(self) -> Computation:
        return Computation(
            region_count=self.config.region_count,
            process_count=self.config.process_count,
            initial_values=self.config.initial,
            events=tuple(self.events),
        )


class BaseWorkload(ABC):
    """Abstract base class for workload generators."""

    name: str = "base"
    description: str = "Base workload"

    def generate(self, config: WorkloadConfig) -> Computation:
        """
        Generates a computation, deterministic in config.seed.

        Returns:
            Computation: A valid computation with config.event_count events
        """
        self.validate(config)
        rng = np.random.default_rng(config.seed)
        log = EventLog(config, rng)
        self._run(log, rng)
        comp = log.build()
        logger.debug("%s workload seed=%d produced %r", self.name, config.seed, comp)
        return comp

    def validate(self, config: WorkloadConfig) -> None:
        """Checks workload-specific constraints on the config."""

    @abstractmethod
    def _run(self, log: EventLog, rng: np.random.Generator) -> None:
        """Appends events to log until it is full."""
        pass
