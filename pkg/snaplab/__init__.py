"""
SnapLab - Simulate memory acquisitions and classify snapshot quality.

Generates concurrent computations over memory regions with full ground truth,
acquires snapshots with frozen, sequential, priority and copy-on-write
strategies, and checks each snapshot for correctness, instantaneous,
quasi-instantaneous and causal consistency, and restrictive and permissive
integrity.

Basic usage:
    from snaplab import WorkloadConfig, generate, replay, SequentialPlan, classify

    comp = generate(WorkloadConfig(region_count=4, event_count=20, seed=1))
    gt = replay(comp)
    s = SequentialPlan(at=5).acquire(comp, gt)
    print(classify(comp, gt, s, tau=5))
"""

__version__ = '0.1.0'

from .acquisition import (
    CopyOnWritePlan,
    FrozenPlan,
    PriorityPlan,
    SequentialPlan,
    acquire_cow,
    acquire_frozen,
    acquire_priority,
    acquire_sequential,
    get_strategy,
    inject_fault,
    list_strategies,
)
from .campaign import (
    CampaignConfig,
    CampaignReport,
    scan_campaign,
    verify_implications,
    violation_rates,
)
from .causality import (
    CausalOrder,
    build_causal_order,
    concurrent,
    enumerate_consistent_cuts,
    happened_before,
    is_consistent_cut,
    lattice_edges,
)
from .errors import (
    CounterexampleFound,
    InternalImplicationViolation,
    InvalidComputation,
    InvalidConfig,
    RecordFormatError,
    SnaplabError,
    TooLarge,
)
from .evaluator import (
    Verdict,
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
from .fixtures import FIXTURES, canonical_computation, get_fixture, list_fixtures
from .loader import TraceLoader, read_snapshot, read_trace, write_snapshot, write_trace
from .model import (
    Computation,
    Copy,
    Event,
    EventKind,
    GroundTruth,
    Snapshot,
    induced_cut,
    most_recent_event,
    replay,
    value_at,
)
from .vclock import VectorClock, global_time, rt_check, vc_consistent, vc_less, vc_update
from .workloads import KindRegime, WorkloadConfig, generate, get_workload, list_workloads

__all__ = [
    'Computation', 'Copy', 'Event', 'EventKind', 'GroundTruth', 'Snapshot',
    'replay', 'value_at', 'most_recent_event', 'induced_cut',
    'CausalOrder', 'build_causal_order', 'happened_before', 'concurrent',
    'is_consistent_cut', 'enumerate_consistent_cuts', 'lattice_edges',
    'VectorClock', 'vc_update', 'vc_less', 'global_time', 'vc_consistent', 'rt_check',
    'KindRegime', 'WorkloadConfig', 'generate', 'get_workload', 'list_workloads',
    'FrozenPlan', 'SequentialPlan', 'PriorityPlan', 'CopyOnWritePlan',
    'acquire_frozen', 'acquire_sequential', 'acquire_priority', 'acquire_cow',
    'get_strategy', 'list_strategies', 'inject_fault',
    'Verdict', 'check_correctness', 'check_instantaneous', 'check_quasi_instantaneous',
    'check_causal', 'check_restrictive_integrity', 'check_permissive_integrity',
    'check_realtime_closed', 'timing_deltas', 'classify',
    'CampaignConfig', 'CampaignReport', 'verify_implications', 'scan_campaign',
    'violation_rates',
    'TraceLoader', 'read_trace', 'write_trace', 'read_snapshot', 'write_snapshot',
    'FIXTURES', 'canonical_computation', 'get_fixture', 'list_fixtures',
    'SnaplabError', 'InvalidComputation', 'InvalidConfig', 'RecordFormatError',
    'TooLarge', 'InternalImplicationViolation', 'CounterexampleFound',
]
