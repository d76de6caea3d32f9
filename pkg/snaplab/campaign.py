"""
Randomized campaigns over (computation, plan, tau) cases.

A campaign draws seeded cases across kind regimes, workloads and acquisition
strategies, classifies every snapshot, and then checks:
- the implications among criteria, with zero tolerance
- witnesses for the non-implications, from the campaign or the golden fixtures
- the frozen and copy-on-write guarantees

Usage:
    report = verify_implications(CampaignConfig(cases=1000, seed=7))
    report.clean
    report.cases            # pandas DataFrame, one row per case
    report.rates()          # violation rate per criterion and strategy
"""

from __future__ import annotations

import json
import logging
import multiprocessing
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional, Union

import numpy as np
import pandas as pd

from .acquisition import (
    BaseStrategy,
    CopyOnWritePlan,
    FrozenPlan,
    PriorityPlan,
    SequentialPlan,
    acquire_frozen,
    get_strategy,
    plan_from_dict,
)
from .causality import build_causal_order
from .errors import CounterexampleFound, InvalidConfig
from .evaluator import Verdict, classify, timing_deltas
from .fixtures import FIXTURES, Fixture
from .model import Computation, EventKind, Snapshot, Time, replay
from .vclock import clock_snapshot, vc_consistent
from .workloads import KindRegime, WorkloadConfig, generate, get_workload

logger = logging.getLogger(__name__)

DEFAULT_CASES = 10_000
DEFAULT_SEED = 7

CRITERIA = [
    'correct',
    'instantaneous',
    'quasi_instantaneous',
    'causal',
    'restrictive_integrity',
    'permissive_integrity',
]


@dataclass(frozen=True)
class CampaignConfig:
    """
    Parameters of an implication campaign.

    Args:
        cases: Number of cases to draw
        seed: Campaign seed; case i draws from default_rng([seed, i])
        regimes: Kind regimes, cycled over cases
        strategies: Strategy names, cycled over cases
        workloads: Workload names, drawn per case
        max_regions: Upper bound of the region count
        max_processes: Upper bound of the process count
        max_events: Upper bound of the event count
        max_delay: Upper bound of the per-region scan delay
        read_fraction: Read probability under the mixed regime
        window: Restrict quasi-instantaneous witnesses to the acquisition window
        strict: Raise CounterexampleFound on the first counterexample
        jobs: Worker processes for the case fan-out
        max_bundles: Reproduction bundles kept per implication
    """
    cases: int = DEFAULT_CASES
    seed: int = DEFAULT_SEED
    regimes: tuple[KindRegime, ...] = tuple(KindRegime)
    strategies: tuple[str, ...] = ('frozen', 'sequential', 'priority', 'cow')
    workloads: tuple[str, ...] = ('random', 'linked_list')
    max_regions: int = 5
    max_processes: int = 3
    max_events: int = 24
    max_delay: int = 3
    read_fraction: float = 0.3
    window: bool = False
    strict: bool = False
    jobs: int = 1
    max_bundles: int = 5

    def __post_init__(self):
        object.__setattr__(
            self, 'regimes', tuple(KindRegime.parse(r) if isinstance(r, str) else r
                                   for r in self.regimes)
        )
        object.__setattr__(self, 'strategies', tuple(self.strategies))
        object.__setattr__(self, 'workloads', tuple(self.workloads))

        if self.cases < 0:
            raise InvalidConfig(f"cases must be >= 0, got {self.cases}")
        if not 0 <= self.seed < 2**64:
            raise InvalidConfig(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not self.regimes or not self.strategies or not self.workloads:
            raise InvalidConfig("regimes, strategies and workloads must not be empty")
        for name in self.strategies:
            try:
                get_strategy(name)
            except ValueError as exc:
                raise InvalidConfig(str(exc)) from exc
        for name in self.workloads:
            try:
                get_workload(name)
            except ValueError as exc:
                raise InvalidConfig(str(exc)) from exc
        for name in ('max_regions', 'max_processes', 'max_delay', 'jobs'):
            if getattr(self, name) < 1:
                raise InvalidConfig(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.max_events < 0:
            raise InvalidConfig(f"max_events must be >= 0, got {self.max_events}")
        if not 0.0 <= self.read_fraction <= 1.0:
            raise InvalidConfig(f"read_fraction must lie in [0, 1], got {self.read_fraction}")

    def to_dict(self) -> dict:
        data = asdict(self)
        data['regimes'] = [r.value for r in self.regimes]
        data['strategies'] = list(self.strategies)
        data['workloads'] = list(self.workloads)
        return data


@dataclass
class CaseResult:
    """Everything known about one classified case."""
    index: int
    regime: KindRegime
    strategy: str
    workload: WorkloadConfig
    plan: Optional[BaseStrategy]
    snapshot: Snapshot
    verdict: Verdict
    vc_consistent: bool
    timing: dict[str, float]
    cow_matches_frozen: Optional[bool] = None
    source: str = 'campaign'

    def row(self) -> dict:
        return {
            'case': self.index,
            'regime': self.regime.value,
            'workload': self.workload.workload,
            'strategy': self.strategy,
            'regions': self.workload.region_count,
            'processes': self.workload.process_count,
            'events': self.workload.event_count,
            'seed': self.workload.seed,
            'tau': self.verdict.tau,
            **self.verdict.criteria,
            'quasi_witness': self.verdict.quasi_witness,
            'realtime_closed': self.verdict.realtime_closed,
            'rt_consistent': self.verdict.rt_consistent,
            'vc_consistent': self.vc_consistent,
            **self.timing,
        }

    def bundle(self) -> dict:
        """Reproduction bundle: enough to rebuild the case with reproduce()."""
        return {
            'case': self.index,
            'source': self.source,
            'seed': self.workload.seed,
            'config': self.workload.to_dict(),
            'plan': self.plan.to_dict() if self.plan else {},
            'tau': self.verdict.tau,
            'snapshot': [[c.v, c.t] for c in self.snapshot],
            'verdict': self.verdict.to_dict(),
        }


def evaluate_case(
    index: int,
    config: WorkloadConfig,
    plan: BaseStrategy,
    tau: Time,
    window: bool = False,
) -> CaseResult:
    """Generates, acquires and classifies a single case."""
    comp = generate(config)
    gt = replay(comp)
    order = build_causal_order(comp)
    s = plan.acquire(comp, gt)
    verdict = classify(comp, gt, s, tau, order=order, window=window)

    cow_matches_frozen = None
    if isinstance(plan, CopyOnWritePlan):
        cow_matches_frozen = s.values == acquire_frozen(gt, plan.start).values

    return CaseResult(
        index=index,
        regime=config.regime,
        strategy=plan.name,
        workload=config,
        plan=plan,
        snapshot=s,
        verdict=verdict,
        vc_consistent=vc_consistent(clock_snapshot(comp, s)),
        timing=timing_deltas(s, tau),
        cow_matches_frozen=cow_matches_frozen,
    )


def draw_case(config: CampaignConfig, index: int) -> tuple[WorkloadConfig, BaseStrategy, Time]:
    """
    Draws case `index` of a campaign, deterministic in (config.seed, index).

    tau never exceeds the plan's start, so every copy happens at or after
    tau; frozen and copy-on-write plans use tau = start.
    """
    rng = np.random.default_rng([config.seed, index])
    regime = config.regimes[index % len(config.regimes)]
    strategy = config.strategies[(index // len(config.regimes)) % len(config.strategies)]

    n = int(rng.integers(1, config.max_regions + 1))
    workload = WorkloadConfig(
        region_count=n,
        process_count=int(rng.integers(1, config.max_processes + 1)),
        event_count=int(rng.integers(0, config.max_events + 1)),
        regime=regime,
        read_fraction=config.read_fraction if regime.has_reads else 0.0,
        seed=int(rng.integers(2**63)),
        workload=config.workloads[int(rng.integers(len(config.workloads)))],
    )

    # events occupy ticks 1..event_count; start anywhere up to one past the end
    start = int(rng.integers(0, workload.event_count + 2))
    delay = int(rng.integers(1, config.max_delay + 1))
    order = tuple(int(r) for r in rng.permutation(n))
    tau = int(rng.integers(0, start + 1))

    strategy_class = get_strategy(strategy)
    if strategy_class is FrozenPlan:
        return workload, FrozenPlan(at=start), start
    if strategy_class is CopyOnWritePlan:
        return workload, CopyOnWritePlan(at=start, order=order, delay=delay), start
    if strategy_class is PriorityPlan:
        k = int(rng.integers(0, n + 1))
        return workload, PriorityPlan(at=start, priority=order[:k], delay=delay), tau
    return workload, SequentialPlan(at=start, order=order, delay=delay), tau


def run_case(config: CampaignConfig, index: int) -> CaseResult:
    workload, plan, tau = draw_case(config, index)
    result = evaluate_case(index, workload, plan, tau, window=config.window)
    logger.debug("Case %d: %s %r", index, plan.name, result.verdict)
    return result


def _run_chunk(config: CampaignConfig, indices: list[int]) -> list[CaseResult]:
    return [run_case(config, i) for i in indices]


def run_cases(config: CampaignConfig) -> list[CaseResult]:
    """Runs every case, fanning out over config.jobs worker processes."""
    indices = list(range(config.cases))
    if config.jobs == 1 or len(indices) < 2:
        return _run_chunk(config, indices)

    chunks = [indices[k::config.jobs] for k in range(config.jobs)]
    with multiprocessing.Pool(config.jobs) as workers:
        parts = workers.starmap(_run_chunk, [(config, chunk) for chunk in chunks])
    # merge is independent of worker scheduling
    return sorted((c for part in parts for c in part), key=lambda c: c.index)


def reproduce(bundle: dict, window: bool = False) -> CaseResult:
    """Rebuilds a campaign case from its reproduction bundle."""
    config = WorkloadConfig(**bundle['config'])
    plan = plan_from_dict(bundle['plan'])
    return evaluate_case(bundle['case'], config, plan, bundle['tau'], window=window)


@dataclass(frozen=True)
class Implication:
    """
    premise => conclusion over classified cases.

    Args:
        name: Display name
        premise: Predicate selecting the cases the implication constrains
        conclusion: Predicate that must hold whenever the premise does
        regimes: Regimes the implication applies to (None: all)
        strategies: Strategies the implication applies to (None: all)
        primary: One of the implications among the six criteria
        needs_full_timeline: Skipped when witnesses are restricted to a window
    """
    name: str
    premise: Callable[[CaseResult], bool]
    conclusion: Callable[[CaseResult], bool]
    regimes: Optional[tuple[KindRegime, ...]] = None
    strategies: Optional[tuple[str, ...]] = None
    primary: bool = True
    needs_full_timeline: bool = False

    def applies(self, case: CaseResult) -> bool:
        if self.regimes is not None and case.regime not in self.regimes:
            return False
        return self.strategies is None or case.strategy in self.strategies


NO_READS = (KindRegime.ALL_UNIQUELY_MODIFYING, KindRegime.ALL_MODIFYING)

IMPLICATIONS = [
    Implication('instantaneous => quasi_instantaneous',
                lambda c: c.verdict.instantaneous,
                lambda c: c.verdict.quasi_instantaneous),
    Implication('restrictive_integrity => permissive_integrity',
                lambda c: c.verdict.restrictive_integrity,
                lambda c: c.verdict.permissive_integrity),
    Implication('permissive_integrity => quasi_instantaneous',
                lambda c: c.verdict.permissive_integrity,
                lambda c: c.verdict.quasi_instantaneous),
    Implication('restrictive_integrity => correct',
                lambda c: c.verdict.restrictive_integrity,
                lambda c: c.verdict.correct),
    Implication('permissive_integrity => correct',
                lambda c: c.verdict.permissive_integrity,
                lambda c: c.verdict.correct),
    Implication('restrictive_integrity => causal (no reads)',
                lambda c: c.verdict.restrictive_integrity,
                lambda c: c.verdict.causal,
                regimes=NO_READS),
    Implication('quasi_instantaneous => causal (uniquely modifying)',
                lambda c: c.verdict.quasi_instantaneous,
                lambda c: c.verdict.causal,
                regimes=(KindRegime.ALL_UNIQUELY_MODIFYING,)),
    Implication('realtime_closed => causal',
                lambda c: c.verdict.realtime_closed,
                lambda c: c.verdict.causal,
                primary=False),
    Implication('realtime_closed & correct => quasi_instantaneous',
                lambda c: c.verdict.realtime_closed and c.verdict.correct,
                lambda c: c.verdict.quasi_instantaneous,
                primary=False, needs_full_timeline=True),
    Implication('rt_consistent => quasi_instantaneous',
                lambda c: c.verdict.rt_consistent,
                lambda c: c.verdict.quasi_instantaneous,
                primary=False),
    Implication('vc_consistent <=> causal',
                lambda c: True,
                lambda c: c.vc_consistent == c.verdict.causal,
                primary=False),
    Implication('cow => quasi_instantaneous & permissive_integrity & frozen values',
                lambda c: True,
                lambda c: (c.verdict.quasi_instantaneous and c.verdict.permissive_integrity
                           and bool(c.cow_matches_frozen)),
                strategies=('cow',), primary=False),
    Implication('frozen => all criteria',
                lambda c: True,
                lambda c: all(c.verdict.criteria.values()),
                strategies=('frozen',), primary=False),
]


@dataclass(frozen=True)
class NonImplication:
    """A combination of verdicts showing that an implication does not hold."""
    name: str
    witness: Callable[[CaseResult], bool]
    fixture: str
    regimes: Optional[tuple[KindRegime, ...]] = None

    def matches(self, case: CaseResult) -> bool:
        if self.regimes is not None and case.regime not in self.regimes:
            return False
        return self.witness(case)


NON_IMPLICATIONS = [
    NonImplication('causal =/=> quasi_instantaneous',
                   lambda c: c.verdict.causal and not c.verdict.quasi_instantaneous,
                   fixture='causal_not_quasi'),
    NonImplication('quasi_instantaneous =/=> permissive_integrity',
                   lambda c: c.verdict.quasi_instantaneous and not c.verdict.permissive_integrity,
                   fixture='quasi_without_integrity'),
    NonImplication('quasi_instantaneous =/=> causal (with reads)',
                   lambda c: c.verdict.quasi_instantaneous and not c.verdict.causal,
                   fixture='quasi_not_causal',
                   regimes=(KindRegime.MIXED_WITH_READS,)),
    NonImplication('permissive_integrity =/=> restrictive_integrity',
                   lambda c: c.verdict.permissive_integrity and not c.verdict.restrictive_integrity,
                   fixture='reverted_value'),
    NonImplication('quasi_instantaneous =/=> rt_consistent',
                   lambda c: c.verdict.quasi_instantaneous and not c.verdict.rt_consistent,
                   fixture='quasi_not_causal'),
]


def regime_of(comp: Computation) -> KindRegime:
    """The narrowest regime that admits every event of comp."""
    kinds = {e.kind for e in comp.events}
    if EventKind.NON_MODIFYING in kinds:
        return KindRegime.MIXED_WITH_READS
    if EventKind.MODIFYING in kinds:
        return KindRegime.ALL_MODIFYING
    return KindRegime.ALL_UNIQUELY_MODIFYING


def evaluate_fixture(fixture: Fixture) -> CaseResult:
    """Classifies a golden fixture as a pseudo-case."""
    comp = fixture.computation
    gt = replay(comp)
    verdict = classify(comp, gt, fixture.snapshot, fixture.tau)
    workload = WorkloadConfig(
        region_count=comp.region_count,
        process_count=comp.process_count,
        event_count=len(comp),
        regime=regime_of(comp),
        initial_values=comp.initial_values,
    )
    return CaseResult(
        index=-1,
        regime=workload.regime,
        strategy='fixture',
        workload=workload,
        plan=None,
        snapshot=fixture.snapshot,
        verdict=verdict,
        vc_consistent=vc_consistent(clock_snapshot(comp, fixture.snapshot)),
        timing=timing_deltas(fixture.snapshot, fixture.tau),
        source=f"fixture:{fixture.name}",
    )


@dataclass
class ImplicationResult:
    name: str
    primary: bool
    cases: int = 0
    premise_held: int = 0
    counterexamples: int = 0
    bundles: list[dict] = field(default_factory=list)

    def __repr__(self):
        return (
            f"ImplicationResult({self.name!r}, cases={self.cases}, "
            f"premise_held={self.premise_held}, counterexamples={self.counterexamples})"
        )


@dataclass
class WitnessResult:
    name: str
    found: bool
    source: str = ''
    count: int = 0
    bundle: Optional[dict] = None


@dataclass
class CampaignReport:
    """
    Outcome of a campaign.

    Attributes:
        config: The campaign configuration
        implications: Per-implication counts and counterexample bundles
        witnesses: Per-non-implication witness
        results: Every classified case, in case order
    """
    config: CampaignConfig
    implications: list[ImplicationResult]
    witnesses: list[WitnessResult]
    results: list[CaseResult] = field(default_factory=list, repr=False)

    @property
    def clean(self) -> bool:
        """No counterexample to any implication."""
        return self.counterexamples == 0

    @property
    def counterexamples(self) -> int:
        return sum(i.counterexamples for i in self.implications)

    @property
    def cases(self) -> pd.DataFrame:
        """One row per case."""
        return pd.DataFrame([c.row() for c in self.results])

    def rates(self, by: Optional[str] = 'strategy') -> pd.DataFrame:
        """Violation rate of every criterion, grouped by `by` (None: overall)."""
        return violation_rates(self.cases, by=by)

    def first_counterexample(self) -> Optional[tuple[str, dict]]:
        for result in self.implications:
            if result.bundles:
                return result.name, result.bundles[0]
        return None

    def to_dict(self) -> dict:
        return {
            'format_version': 1,
            'record': 'campaign_report',
            'config': self.config.to_dict(),
            'clean': self.clean,
            'implications': [asdict(i) for i in self.implications],
            'witnesses': [asdict(w) for w in self.witnesses],
        }

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        """Serializes the report; writes it to path if given."""
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True)
        if path is not None:
            Path(path).write_text(text + '\n')
            logger.info("Wrote campaign report to %s", path)
        return text

    def to_csv(self, path: Union[str, Path]) -> None:
        self.cases.to_csv(path, index=False)
        logger.info("Wrote %d cases to %s", len(self.results), path)

    def to_excel(self, path: Union[str, Path]) -> None:
        """Writes cases and rates to two sheets (openpyxl engine)."""
        with pd.ExcelWriter(path, engine='openpyxl') as writer:
            self.cases.to_excel(writer, sheet_name='cases', index=False)
            self.rates().to_excel(writer, sheet_name='rates')
        logger.info("Wrote campaign workbook to %s", path)

    def __repr__(self):
        return (
            f"CampaignReport(cases={len(self.results)}, clean={self.clean}, "
            f"witnesses={sum(w.found for w in self.witnesses)}/{len(self.witnesses)})"
        )


def violation_rates(cases: pd.DataFrame, by: Optional[str] = None) -> pd.DataFrame:
    """
    Fraction of cases failing each criterion.

    Args:
        cases: Case table with boolean criterion columns
        by: Optional column to group by

    Returns:
        DataFrame of rates (one row per group, or a single 'all' row)
    """
    columns = [c for c in CRITERIA if c in cases.columns]
    failed = ~cases[columns].astype(bool)
    if by is None:
        return failed.mean().to_frame('all').T
    return failed.groupby(cases[by]).mean()


def check_implications(
    results: Iterable[CaseResult],
    implications: list[Implication],
    max_bundles: int = 5,
    strict: bool = False,
) -> list[ImplicationResult]:
    """
    Counts premises and counterexamples of every implication.

    Raises:
        CounterexampleFound: On the first counterexample if strict
    """
    tallies = [ImplicationResult(i.name, i.primary) for i in implications]
    for case in results:
        for implication, tally in zip(implications, tallies):
            if not implication.applies(case):
                continue
            tally.cases += 1
            if not implication.premise(case):
                continue
            tally.premise_held += 1
            if implication.conclusion(case):
                continue
            tally.counterexamples += 1
            bundle = case.bundle()
            if strict:
                raise CounterexampleFound(implication.name, bundle)
            if len(tally.bundles) < max_bundles:
                tally.bundles.append(bundle)
    return tallies


def find_witnesses(results: list[CaseResult]) -> list[WitnessResult]:
    """First campaign witness of every non-implication, else its golden fixture."""
    witnesses = []
    for non_implication in NON_IMPLICATIONS:
        matching = [c for c in results if non_implication.matches(c)]
        if matching:
            witnesses.append(WitnessResult(
                non_implication.name, True, 'campaign', len(matching), matching[0].bundle()
            ))
            continue
        case = evaluate_fixture(FIXTURES[non_implication.fixture]())
        found = non_implication.matches(case)
        witnesses.append(WitnessResult(
            non_implication.name, found, case.source, int(found), case.bundle() if found else None
        ))
    return witnesses


def verify_implications(config: CampaignConfig) -> CampaignReport:
    """
    Runs a campaign and checks every implication with zero tolerance.

    Raises:
        CounterexampleFound: If config.strict and any implication fails
    """
    logger.info(
        "Running %d cases (seed=%d, jobs=%d)", config.cases, config.seed, config.jobs
    )
    results = run_cases(config)
    implications = [
        i for i in IMPLICATIONS if not (config.window and i.needs_full_timeline)
    ]
    tallies = check_implications(results, implications, config.max_bundles, config.strict)
    report = CampaignReport(config, tallies, find_witnesses(results), results)

    for tally in tallies:
        if tally.counterexamples:
            logger.warning("%d counterexamples to %s", tally.counterexamples, tally.name)
    logger.info("Campaign finished: %r", report)
    return report


def scan_campaign(
    seeds: Iterable[int] = range(100),
    region_count: int = 6,
    process_count: int = 3,
    event_count: int = 40,
    delay: int = 1,
    start: Optional[Time] = None,
    workload: str = 'random',
) -> pd.DataFrame:
    """
    Sequential scans of uniquely modifying workloads, one case per seed.

    The scan starts mid-computation by default so that events keep landing
    while regions are copied. Each seed drives both the workload and the
    scan order.

    Returns:
        DataFrame with one row per seed (criteria, rt_consistent, timing)
    """
    rows = []
    for seed in seeds:
        config = WorkloadConfig(
            region_count=region_count,
            process_count=process_count,
            event_count=event_count,
            regime=KindRegime.ALL_UNIQUELY_MODIFYING,
            seed=int(seed),
            workload=workload,
        )
        at = event_count // 2 if start is None else start
        order = tuple(int(r) for r in np.random.default_rng(seed).permutation(region_count))
        case = evaluate_case(int(seed), config, SequentialPlan(at=at, order=order, delay=delay), at)
        rows.append({
            'seed': int(seed),
            **case.verdict.criteria,
            'rt_consistent': case.verdict.rt_consistent,
            **case.timing,
        })
    logger.info("Scan campaign over %d seeds", len(rows))
    return pd.DataFrame(rows)
