import logging
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import workload_configs
from snaplab.causality import (
    build_causal_order,
    concurrent,
    enumerate_consistent_cuts,
    happened_before,
    is_consistent_cut,
    lattice_edges,
)
from snaplab.errors import SameEvent, TooLarge
from snaplab.model import Computation, Event, EventKind
from snaplab.workloads import generate


def closure_oracle(comp):
    """Transitive closure of the adjacency edges by Floyd-Warshall iteration."""
    m = len(comp.events)
    index = {e.id: i for i, e in enumerate(comp.events)}
    reach = [[False] * m for _ in range(m)]
    for chain in list(comp.process_events) + list(comp.region_events):
        for a, b in zip(chain, chain[1:]):
            reach[index[a.id]][index[b.id]] = True
    for k in range(m):
        for i in range(m):
            for j in range(m):
                reach[i][j] = reach[i][j] or (reach[i][k] and reach[k][j])
    return {(comp.events[i].id, comp.events[j].id)
            for i in range(m) for j in range(m) if reach[i][j]}


def chain(n):
    events = [Event(i, 0, 0, i, EventKind.UNIQUELY_MODIFYING, i) for i in range(1, n + 1)]
    return Computation(1, 1, (0,), events)


def test_canonical_order(canonical_order):
    assert happened_before(canonical_order, 1, 3)
    assert happened_before(canonical_order, 2, 3)
    assert not happened_before(canonical_order, 1, 2)
    assert not happened_before(canonical_order, 3, 1)
    assert canonical_order.pairs() == [(1, 3), (2, 3)]
    assert canonical_order.predecessors(3) == frozenset({1, 2})


def test_concurrent(canonical_order):
    assert concurrent(canonical_order, 1, 2)
    assert not concurrent(canonical_order, 1, 3)
    with pytest.raises(SameEvent):
        concurrent(canonical_order, 1, 1)


@pytest.mark.parametrize('cut, expected', [
    (frozenset(), True),
    (frozenset({1}), True),
    (frozenset({1, 2}), True),
    (frozenset({2, 3}), False),
    (frozenset({3}), False),
    (frozenset({1, 2, 3}), True),
])
def test_is_consistent_cut(canonical, canonical_order, cut, expected):
    assert is_consistent_cut(canonical, canonical_order, cut) is expected


def test_unknown_event_in_cut(canonical, canonical_order):
    with pytest.raises(ValueError):
        is_consistent_cut(canonical, canonical_order, frozenset({9}))


def test_canonical_lattice(canonical):
    cuts = enumerate_consistent_cuts(canonical)
    assert cuts == [
        frozenset(),
        frozenset({1}),
        frozenset({2}),
        frozenset({1, 2}),
        frozenset({1, 2, 3}),
    ]
    assert lattice_edges(cuts) == [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]


def test_empty_computation_has_one_cut():
    assert enumerate_consistent_cuts(Computation(2, 1, (0, 0))) == [frozenset()]


def test_enumeration_bound():
    with pytest.raises(TooLarge):
        enumerate_consistent_cuts(chain(21))
    with pytest.raises(TooLarge):
        enumerate_consistent_cuts(chain(4), bound=3)


def test_enumeration_warns_near_bound(caplog):
    with caplog.at_level(logging.WARNING, logger='snaplab.causality'):
        cuts = enumerate_consistent_cuts(chain(19))
    assert len(cuts) == 20
    assert 'may be large' in caplog.text


@settings(max_examples=500, deadline=None)
@given(workload_configs(max_events=12))
def test_closure_matches_oracle(config):
    comp = generate(config)
    order = build_causal_order(comp)
    assert set(order.pairs()) == closure_oracle(comp)
    # irreflexive
    assert not np.diag(order.before).any()


def consistent_oracle(comp, before, cut):
    """Closed under the oracle's happened-before and a prefix of every region."""
    if any(e not in cut for e, f in before if f in cut):
        return False
    for events in comp.region_events:
        taken = [e.id in cut for e in events]
        if taken != sorted(taken, reverse=True):
            return False
    return True


@settings(max_examples=40, deadline=None)
@given(workload_configs(max_events=12))
def test_enumeration_matches_subsets(config):
    comp = generate(config)
    before = closure_oracle(comp)
    ids = comp.event_ids
    brute = {
        frozenset(c)
        for k in range(len(ids) + 1)
        for c in combinations(ids, k)
        if consistent_oracle(comp, before, frozenset(c))
    }
    cuts = enumerate_consistent_cuts(comp)
    assert set(cuts) == brute
    assert len(cuts) == len(brute)
