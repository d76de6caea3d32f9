import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import snaplab.evaluator as evaluator
from conftest import workload_configs
from snaplab.acquisition import (
    CopyOnWritePlan,
    FrozenPlan,
    SequentialPlan,
    acquire_cow,
    acquire_frozen,
    acquire_sequential,
    inject_fault,
)
from snaplab.errors import InternalImplicationViolation, LengthMismatch
from snaplab.evaluator import (
    check_causal,
    check_correctness,
    check_instantaneous,
    check_permissive_integrity,
    check_quasi_instantaneous,
    check_realtime_closed,
    check_restrictive_integrity,
    classify,
    timing_deltas,
)
from snaplab.fixtures import causal_not_quasi, quasi_without_integrity, reverted_value
from snaplab.model import Computation, Snapshot, replay, value_at
from snaplab.workloads import generate


def quasi_oracle(s, gt, last):
    """Smallest tick at which all copied values are in memory, scanning every tick."""
    for t in range(last + 1):
        if all(c.v == value_at(gt, r, t) for r, c in enumerate(s)):
            return t
    return None


def test_correctness(canonical_gt):
    s = acquire_frozen(canonical_gt, 0)
    assert check_correctness(s, canonical_gt)
    assert not check_correctness(inject_fault(s, 0), canonical_gt)


def test_instantaneous(canonical_gt):
    assert check_instantaneous(acquire_frozen(canonical_gt, 2))
    assert not check_instantaneous(acquire_sequential(canonical_gt, 0, delay=1))
    assert check_instantaneous(Snapshot.from_pairs([(0, 4)]))


@pytest.mark.parametrize('values, witness', [
    ((1, 1), 2),
    ((0, 2), None),
    ((0, 0), 0),
    ((1, 2), 3),
])
def test_quasi_witness(canonical_gt, values, witness):
    s = Snapshot.from_pairs([(values[0], 9), (values[1], 9)])
    assert check_quasi_instantaneous(s, canonical_gt) == witness


@pytest.mark.parametrize('t', [0, 1, 2, 3])
def test_frozen_witness_is_freeze_time(canonical_gt, t):
    assert check_quasi_instantaneous(acquire_frozen(canonical_gt, t), canonical_gt) == t


def test_quasi_window(canonical_gt):
    s = Snapshot.from_pairs([(1, 5), (2, 6)])
    assert check_quasi_instantaneous(s, canonical_gt) == 3
    assert check_quasi_instantaneous(s, canonical_gt, window=(4, 6)) == 4
    early = Snapshot.from_pairs([(0, 5), (0, 6)])
    assert check_quasi_instantaneous(early, canonical_gt) == 0
    assert check_quasi_instantaneous(early, canonical_gt, window=(4, 6)) is None


def test_causal(canonical, canonical_order, canonical_gt):
    assert not check_causal(canonical, canonical_order, Snapshot.from_pairs([(0, 0), (2, 3)]))
    assert check_causal(canonical, canonical_order, acquire_frozen(canonical_gt, 2))


def test_integrity_on_canonical_scan(canonical_gt):
    s = acquire_sequential(canonical_gt, start=0, order=(0, 1), delay=1)
    assert not check_restrictive_integrity(s, canonical_gt, tau=0)
    assert not check_permissive_integrity(s, canonical_gt, tau=0)


def test_integrity_of_cow(canonical, canonical_gt):
    s = acquire_cow(canonical, canonical_gt, start=0, order=(0, 1), delay=10)
    assert check_permissive_integrity(s, canonical_gt, tau=0)
    assert check_restrictive_integrity(s, canonical_gt, tau=0)


def test_integrity_on_quiescent_system():
    comp = Computation(3, 2, (4, 5, 6))
    gt = replay(comp)
    for plan in (FrozenPlan(2), SequentialPlan(1, delay=3), CopyOnWritePlan(0)):
        s = plan.acquire(comp, gt)
        assert check_restrictive_integrity(s, gt, tau=plan.start)
        assert check_permissive_integrity(s, gt, tau=plan.start)


def test_reverted_value_splits_integrity():
    fixture = reverted_value()
    gt = replay(fixture.computation)
    assert not check_restrictive_integrity(fixture.snapshot, gt, fixture.tau)
    assert check_permissive_integrity(fixture.snapshot, gt, fixture.tau)


def test_integrity_vacuous_before_tau(canonical_gt):
    s = Snapshot.from_pairs([(0, 0), (0, 1)])
    assert check_restrictive_integrity(s, canonical_gt, tau=5)
    assert check_permissive_integrity(s, canonical_gt, tau=5)


def test_realtime_closed(canonical, canonical_gt):
    assert check_realtime_closed(canonical, acquire_frozen(canonical_gt, 2))
    fixture = causal_not_quasi()
    assert not check_realtime_closed(fixture.computation, fixture.snapshot)


def test_timing_deltas(canonical_gt):
    s = acquire_sequential(canonical_gt, start=0, delay=1)
    assert timing_deltas(s, 0) == {'span': 1.0, 'mean_latency': 1.5}


@pytest.mark.parametrize('t', [0, 1, 2, 3, 7])
def test_frozen_passes_everything(canonical, canonical_gt, t):
    verdict = classify(canonical, canonical_gt, acquire_frozen(canonical_gt, t), tau=t)
    assert all(verdict.criteria.values())
    assert verdict.realtime_closed
    assert verdict.rt_consistent


def test_quasi_without_integrity_verdict():
    fixture = quasi_without_integrity()
    comp = fixture.computation
    verdict = classify(comp, replay(comp), fixture.snapshot, fixture.tau)
    assert verdict.quasi_instantaneous
    assert verdict.quasi_witness == 1
    assert not verdict.permissive_integrity


def test_golden_fixtures(golden):
    comp = golden.computation
    verdict = classify(comp, replay(comp), golden.snapshot, golden.tau).to_dict()
    for name, expected in golden.expected.items():
        assert verdict[name] == expected, f"{golden.name}: {name}"


def test_classify_reports_checker_bugs(canonical, canonical_gt, monkeypatch):
    monkeypatch.setattr(evaluator, 'check_permissive_integrity', lambda s, gt, tau: False)
    with pytest.raises(InternalImplicationViolation):
        classify(canonical, canonical_gt, acquire_frozen(canonical_gt, 1), tau=1)


@pytest.mark.parametrize('pairs', [[(0, 0), (0, 1), (0, 2)], [(0, 0)]])
def test_classify_rejects_region_mismatch(canonical, canonical_gt, pairs):
    with pytest.raises(LengthMismatch, match='computation has 2'):
        classify(canonical, canonical_gt, Snapshot.from_pairs(pairs), tau=0)


def test_verdict_dict():
    fixture = reverted_value()
    verdict = classify(fixture.computation, replay(fixture.computation), fixture.snapshot, 0)
    data = verdict.to_dict()
    assert data['tau'] == 0
    assert data['quasi_witness'] == 0
    assert set(verdict.criteria) <= set(data)


@settings(max_examples=500, deadline=None)
@given(workload_configs(max_events=14), st.integers(0, 16), st.integers(1, 3))
def test_quasi_matches_every_tick_oracle(config, start, delay):
    comp = generate(config)
    gt = replay(comp)
    s = SequentialPlan(at=start, delay=delay).acquire(comp, gt)
    assert check_quasi_instantaneous(s, gt) == quasi_oracle(s, gt, comp.last_time + 1)
    # arbitrary values, including ones that never occur
    shifted = inject_fault(s, 0)
    assert check_quasi_instantaneous(shifted, gt) == quasi_oracle(shifted, gt, comp.last_time + 1)
