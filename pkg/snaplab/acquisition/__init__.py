"""
Acquisition strategies producing snapshots from the ground truth.
"""

from .base import BaseStrategy, inject_fault
from .cow import CopyOnWritePlan, acquire_cow
from .frozen import FrozenPlan, acquire_frozen
from .sequential import (
    PriorityPlan,
    SequentialPlan,
    acquire_priority,
    acquire_sequential,
    priority_order,
)

# Registry of available strategies
STRATEGIES = {
    'frozen': FrozenPlan,
    'sequential': SequentialPlan,
    'cow': CopyOnWritePlan,
    'copy_on_write': CopyOnWritePlan,
    'priority': PriorityPlan,
}


def get_strategy(name: str) -> type:
    """Returns the strategy class by name."""
    name_lower = name.lower()
    if name_lower not in STRATEGIES:
        available = ', '.join(STRATEGIES.keys())
        raise ValueError(f"Strategy '{name}' not found. Available: {available}")
    return STRATEGIES[name_lower]


def list_strategies() -> list:
    """Lists all available strategies."""
    return list(STRATEGIES.keys())


def plan_from_dict(data: dict) -> BaseStrategy:
    """Rebuilds a plan from its to_dict() form."""
    params = dict(data)
    strategy_class = get_strategy(params.pop('strategy'))
    return strategy_class(**params)


__all__ = [
    'BaseStrategy',
    'FrozenPlan',
    'SequentialPlan',
    'PriorityPlan',
    'CopyOnWritePlan',
    'acquire_frozen',
    'acquire_sequential',
    'acquire_priority',
    'acquire_cow',
    'priority_order',
    'inject_fault',
    'STRATEGIES',
    'get_strategy',
    'list_strategies',
    'plan_from_dict',
]
