import pytest
from hypothesis import given, settings

from conftest import workload_configs
from snaplab.errors import InvalidConfig
from snaplab.model import EventKind, replay
from snaplab.workloads import (
    KindRegime,
    LinkedListWorkload,
    RandomWorkload,
    WorkloadConfig,
    generate,
    get_workload,
    list_workloads,
)
from snaplab.workloads.base import MODIFYING_DOMAIN


def test_registry():
    assert get_workload('random') is RandomWorkload
    assert get_workload('Linked_List') is LinkedListWorkload
    assert 'random' in list_workloads()
    with pytest.raises(ValueError, match='Available'):
        get_workload('tree')


def test_generation_is_deterministic():
    config = WorkloadConfig(region_count=3, process_count=2, event_count=20, seed=42)
    assert generate(config) == generate(config)


def test_seeds_differ():
    a = generate(WorkloadConfig(region_count=4, event_count=20, seed=1))
    b = generate(WorkloadConfig(region_count=4, event_count=20, seed=2))
    assert a.events != b.events


def test_ticks_start_at_one():
    comp = generate(WorkloadConfig(event_count=5, seed=3))
    assert [e.rt for e in comp.events] == [1, 2, 3, 4, 5]
    assert comp.event_ids == [1, 2, 3, 4, 5]


@pytest.mark.parametrize('workload', ['random', 'linked_list'])
def test_unique_regime(workload):
    comp = generate(WorkloadConfig(region_count=4, process_count=3, event_count=40,
                                   seed=5, workload=workload))
    assert len(comp) == 40
    assert {e.kind for e in comp.events} == {EventKind.UNIQUELY_MODIFYING}
    replay(comp)


def test_modifying_regime_uses_small_domain():
    comp = generate(WorkloadConfig(region_count=2, event_count=50, seed=9, regime='modifying'))
    assert {e.kind for e in comp.events} == {EventKind.MODIFYING}
    assert all(0 <= e.written < MODIFYING_DOMAIN for e in comp.events)
    replay(comp)


def test_mixed_regime_has_reads_and_unique_writes():
    comp = generate(WorkloadConfig(region_count=3, event_count=60, seed=11,
                                   regime='mixed', read_fraction=0.5))
    kinds = {e.kind for e in comp.events}
    assert kinds == {EventKind.NON_MODIFYING, EventKind.UNIQUELY_MODIFYING}
    replay(comp)


def test_read_fraction_one_reads_only():
    comp = generate(WorkloadConfig(event_count=10, seed=0, regime='mixed', read_fraction=1.0))
    assert all(e.kind is EventKind.NON_MODIFYING for e in comp.events)


def test_read_fraction_ignored_without_reads():
    comp = generate(WorkloadConfig(event_count=10, seed=0, regime='unique', read_fraction=1.0))
    assert all(e.kind.writes for e in comp.events)


def test_canonical_shape_is_reachable():
    """Some seed produces the canonical computation up to renaming."""
    for seed in range(500):
        comp = generate(WorkloadConfig(region_count=2, process_count=2, event_count=3, seed=seed))
        e1, e2, e3 = comp.events
        if e1.p != e2.p and e1.r != e2.r and e3.p == e1.p and e3.r == e2.r:
            assert [e.written for e in comp.events] == [1, 1, 2]
            return
    pytest.fail("no seed in range(500) produced the canonical shape")


def test_linked_list_touches_neighbours():
    comp = generate(WorkloadConfig(region_count=5, process_count=2, event_count=60,
                                   seed=4, workload='linked_list'))
    # unlink and relink touch up to three nodes in a row by one process
    runs = 0
    for a, b in zip(comp.events, comp.events[1:]):
        if a.p == b.p and a.r != b.r:
            runs += 1
    assert runs > 0


@pytest.mark.parametrize('regime, expected', [
    ('unique', KindRegime.ALL_UNIQUELY_MODIFYING),
    ('AllModifying', KindRegime.ALL_MODIFYING),
    ('mixed_with_reads', KindRegime.MIXED_WITH_READS),
])
def test_regime_aliases(regime, expected):
    assert KindRegime.parse(regime) is expected


@pytest.mark.parametrize('kwargs', [
    {'region_count': 0},
    {'process_count': 0},
    {'event_count': -1},
    {'read_fraction': 1.5},
    {'seed': -1},
    {'regime': 'sometimes'},
    {'node_count': 3, 'region_count': 2},
    {'initial_values': (0,), 'region_count': 2},
])
def test_invalid_config(kwargs):
    with pytest.raises(InvalidConfig):
        WorkloadConfig(**kwargs)


def test_unknown_workload():
    with pytest.raises(InvalidConfig):
        generate(WorkloadConfig(workload='tree'))


def test_config_to_dict_round_trip():
    config = WorkloadConfig(region_count=3, regime='mixed', read_fraction=0.25, seed=8,
                            initial_values=(1, 2, 3))
    assert WorkloadConfig(**config.to_dict()) == config


@pytest.mark.parametrize('workload', ['random', 'linked_list'])
@pytest.mark.parametrize('read_fraction', [0.1, 0.3, 0.7])
def test_read_fraction_per_event(workload, read_fraction):
    comp = generate(WorkloadConfig(region_count=4, process_count=3, event_count=10_000,
                                   regime='mixed', read_fraction=read_fraction, seed=1,
                                   workload=workload))
    reads = sum(e.kind is EventKind.NON_MODIFYING for e in comp.events)
    assert abs(reads / len(comp) - read_fraction) <= 0.05


def test_linked_list_writes_of_an_operation_stay_together():
    comp = generate(WorkloadConfig(region_count=5, process_count=3, event_count=400,
                                   regime='mixed', read_fraction=0.5, seed=6,
                                   workload='linked_list'))
    writes = [e for e in comp.events if e.kind.writes]
    assert any(a.p == b.p and a.r != b.r for a, b in zip(writes, writes[1:]))
    replay(comp)


@settings(max_examples=500, deadline=None)
@given(workload_configs(max_regions=5, max_events=30))
def test_generated_computations_are_valid(config):
    comp = generate(config)
    assert len(comp) == config.event_count
    assert comp.region_count == config.region_count
    replay(comp)


@pytest.mark.slow
@pytest.mark.parametrize('workload', ['random', 'linked_list'])
def test_seed_sweep_is_valid(workload):
    for seed in range(10_000):
        regime = list(KindRegime)[seed % 3]
        config = WorkloadConfig(region_count=1 + seed % 5, process_count=1 + seed % 3,
                                event_count=20, regime=regime,
                                read_fraction=0.4 if regime.has_reads else 0.0,
                                seed=seed, workload=workload)
        comp = generate(config)
        assert len(comp) == 20
        replay(comp)
