"""Shared fixtures and hypothesis strategies."""

import matplotlib

matplotlib.use('Agg')

import hypothesis.strategies as st
import pytest

from snaplab.causality import build_causal_order
from snaplab.fixtures import FIXTURES, canonical_computation
from snaplab.model import replay
from snaplab.workloads import KindRegime, WorkloadConfig


@pytest.fixture
def canonical():
    return canonical_computation()


@pytest.fixture
def canonical_gt(canonical):
    return replay(canonical)


@pytest.fixture
def canonical_order(canonical):
    return build_causal_order(canonical)


@pytest.fixture(params=sorted(FIXTURES))
def golden(request):
    return FIXTURES[request.param]()


@st.composite
def workload_configs(draw, max_regions=4, max_processes=3, max_events=12, regimes=None):
    regime = draw(st.sampled_from(regimes or list(KindRegime)))
    return WorkloadConfig(
        region_count=draw(st.integers(1, max_regions)),
        process_count=draw(st.integers(1, max_processes)),
        event_count=draw(st.integers(0, max_events)),
        regime=regime,
        read_fraction=draw(st.floats(0.0, 1.0)) if regime.has_reads else 0.0,
        seed=draw(st.integers(0, 2**32)),
        workload=draw(st.sampled_from(['random', 'linked_list'])),
    )
