"""
Small hand-built computations with known verdicts.

Each fixture pairs a computation with a snapshot and tau and records the
criteria it is known to satisfy or violate. The campaign falls back on them
to witness that an implication does not hold when random cases found none.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Computation, Event, EventKind, Snapshot, Time

U = EventKind.UNIQUELY_MODIFYING
M = EventKind.MODIFYING
N = EventKind.NON_MODIFYING


@dataclass(frozen=True)
class Fixture:
    """A computation, one snapshot of it and the expected verdict fields."""
    name: str
    description: str
    computation: Computation
    snapshot: Snapshot
    tau: Time = 0
    expected: dict = field(default_factory=dict)

    def __repr__(self):
        return f"Fixture({self.name!r}, {self.snapshot!r}, tau={self.tau})"


def canonical_computation() -> Computation:
    """
    Two regions, two processes, three events.

    p0 writes 1 to r0 at t=1; p1 writes 1 to r1 at t=2; p0 writes 2 to r1
    at t=3. e1 -> e3 by process order and e2 -> e3 by region order.
    """
    return Computation(
        region_count=2,
        process_count=2,
        initial_values=(0, 0),
        events=(
            Event(1, p=0, r=0, rt=1, kind=U, written=1),
            Event(2, p=1, r=1, rt=2, kind=U, written=1),
            Event(3, p=0, r=1, rt=3, kind=U, written=2),
        ),
    )


def causally_inconsistent() -> Fixture:
    comp = canonical_computation()
    return Fixture(
        name='causally_inconsistent',
        description="r0 copied before e1, r1 copied after e3 which depends on e1",
        computation=comp,
        snapshot=Snapshot.from_pairs([(0, 0), (2, 3)]),
        expected={
            'correct': True,
            'instantaneous': False,
            'quasi_instantaneous': False,
            'causal': False,
        },
    )


def causal_not_quasi() -> Fixture:
    comp = Computation(
        region_count=2,
        process_count=2,
        initial_values=(0, 0),
        events=(
            Event(1, p=0, r=0, rt=1, kind=U, written=1),
            Event(2, p=1, r=1, rt=2, kind=U, written=1),
        ),
    )
    return Fixture(
        name='causal_not_quasi',
        description="concurrent writes on two regions; the copied values never coexisted",
        computation=comp,
        snapshot=Snapshot.from_pairs([(0, 0), (1, 2)]),
        expected={
            'correct': True,
            'quasi_instantaneous': False,
            'causal': True,
            'permissive_integrity': False,
        },
    )


def quasi_without_integrity() -> Fixture:
    comp = Computation(
        region_count=2,
        process_count=1,
        initial_values=(0, 0),
        events=(Event(1, p=0, r=0, rt=1, kind=U, written=1),),
    )
    return Fixture(
        name='quasi_without_integrity',
        description="values coexist at t=1 but r0 changed after tau=0",
        computation=comp,
        snapshot=Snapshot.from_pairs([(1, 2), (0, 3)]),
        tau=0,
        expected={
            'correct': True,
            'quasi_instantaneous': True,
            'quasi_witness': 1,
            'causal': True,
            'restrictive_integrity': False,
            'permissive_integrity': False,
        },
    )


def quasi_not_causal() -> Fixture:
    comp = Computation(
        region_count=2,
        process_count=1,
        initial_values=(0, 0),
        events=(
            Event(1, p=0, r=0, rt=1, kind=N),
            Event(2, p=0, r=1, rt=2, kind=U, written=1),
        ),
    )
    return Fixture(
        name='quasi_not_causal',
        description="a read of r0 precedes the write of r1; r0 copied before the read",
        computation=comp,
        snapshot=Snapshot.from_pairs([(0, 0), (1, 2)]),
        expected={
            'correct': True,
            'quasi_instantaneous': True,
            'quasi_witness': 2,
            'causal': False,
        },
    )


def reverted_value() -> Fixture:
    comp = Computation(
        region_count=1,
        process_count=1,
        initial_values=(0,),
        events=(
            Event(1, p=0, r=0, rt=1, kind=M, written=1),
            Event(2, p=0, r=0, rt=2, kind=M, written=0),
        ),
    )
    return Fixture(
        name='reverted_value',
        description="r0 changes after tau and is restored before its copy",
        computation=comp,
        snapshot=Snapshot.from_pairs([(0, 3)]),
        tau=0,
        expected={
            'correct': True,
            'quasi_instantaneous': True,
            'quasi_witness': 0,
            'causal': True,
            'restrictive_integrity': False,
            'permissive_integrity': True,
        },
    )


# Registry of golden fixtures
FIXTURES = {
    'causally_inconsistent': causally_inconsistent,
    'causal_not_quasi': causal_not_quasi,
    'quasi_without_integrity': quasi_without_integrity,
    'quasi_not_causal': quasi_not_causal,
    'reverted_value': reverted_value,
}


def get_fixture(name: str) -> Fixture:
    """Builds a fixture by name."""
    if name not in FIXTURES:
        available = ', '.join(FIXTURES.keys())
        raise ValueError(f"Fixture '{name}' not found. Available: {available}")
    return FIXTURES[name]()


def list_fixtures() -> list:
    """Lists all fixture names."""
    return list(FIXTURES.keys())
