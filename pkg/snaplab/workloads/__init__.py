"""
Seeded workload generators producing computations.
"""

from ..errors import InvalidConfig
from ..model import Computation
from .base import BaseWorkload, EventLog, KindRegime, WorkloadConfig
from .linked_list import LinkedListWorkload
from .random_access import RandomWorkload

# Registry of available workloads
WORKLOADS = {
    'random': RandomWorkload,
    'linked_list': LinkedListWorkload,
    'linkedlist': LinkedListWorkload,
}


def get_workload(name: str) -> type:
    """Returns the workload class by name."""
    name_lower = name.lower()
    if name_lower not in WORKLOADS:
        available = ', '.join(WORKLOADS.keys())
        raise ValueError(f"Workload '{name}' not found. Available: {available}")
    return WORKLOADS[name_lower]


def list_workloads() -> list:
    """Lists all available workloads."""
    return list(WORKLOADS.keys())


def generate(config: WorkloadConfig) -> Computation:
    """
    Generates the computation described by config.

    Raises:
        InvalidConfig: If the workload name is unknown or the config is invalid
    """
    try:
        workload_class = get_workload(config.workload)
    except ValueError as exc:
        raise InvalidConfig(str(exc)) from exc
    return workload_class().generate(config)


__all__ = [
    'BaseWorkload',
    'EventLog',
    'KindRegime',
    'WorkloadConfig',
    'RandomWorkload',
    'LinkedListWorkload',
    'WORKLOADS',
    'get_workload',
    'list_workloads',
    'generate',
]
