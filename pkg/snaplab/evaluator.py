"""
Snapshot quality checks.

Six criteria classify a snapshot against the ground truth and the causal
order: correctness, instantaneous, quasi-instantaneous and causal
consistency, restrictive and permissive integrity with respect to tau.
Two further checks come from the same model: whether the induced cut is
closed under realtime order, and the realtime-timestamp consistency check.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Optional

from .causality import CausalOrder, build_causal_order, is_consistent_cut
from .errors import InternalImplicationViolation, LengthMismatch
from .model import (
    Computation,
    GroundTruth,
    Snapshot,
    Time,
    induced_cut,
    realtime_prefix,
    value_at,
)
from .vclock import rt_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    """Classification of one snapshot."""
    correct: bool
    instantaneous: bool
    quasi_instantaneous: bool
    causal: bool
    restrictive_integrity: bool
    permissive_integrity: bool
    tau: Time
    quasi_witness: Optional[Time] = None
    realtime_closed: bool = False
    rt_consistent: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def criteria(self) -> dict[str, bool]:
        """The six boolean criteria by name."""
        return {
            'correct': self.correct,
            'instantaneous': self.instantaneous,
            'quasi_instantaneous': self.quasi_instantaneous,
            'causal': self.causal,
            'restrictive_integrity': self.restrictive_integrity,
            'permissive_integrity': self.permissive_integrity,
        }

    def __repr__(self):
        flags = ', '.join(f"{k}={v}" for k, v in self.criteria.items())
        return f"Verdict({flags}, tau={self.tau}, witness={self.quasi_witness})"


def check_correctness(s: Snapshot, gt: GroundTruth) -> bool:
    """Every copied value equals the region's value at its copy time."""
    return all(c.v == value_at(gt, r, c.t) for r, c in enumerate(s))


def check_instantaneous(s: Snapshot) -> bool:
    """All regions were copied at the same time."""
    return len(set(s.times)) == 1


def check_quasi_instantaneous(
    s: Snapshot,
    gt: GroundTruth,
    window: Optional[tuple[Time, Time]] = None,
) -> Optional[Time]:
    """
    Smallest time at which all copied values coexisted in memory.

    m is piecewise constant, so time 0 and the change points of gt are the
    only candidates. With a window (lo, hi) the search is limited to it.

    Returns:
        The witness time, or None if the values never coexisted
    """
    candidates = gt.change_times()
    if window is not None:
        lo, hi = window
        candidates = [lo] + [t for t in candidates if lo < t <= hi]
    for t in candidates:
        if all(c.v == value_at(gt, r, t) for r, c in enumerate(s)):
            return t
    return None


def acquisition_window(s: Snapshot, tau: Time) -> tuple[Time, Time]:
    """[tau, last copy time]."""
    return tau, max(max(s.times), tau)


def check_causal(comp: Computation, order: CausalOrder, s: Snapshot) -> bool:
    """The snapshot's induced cut is consistent."""
    return is_consistent_cut(comp, order, induced_cut(comp, s))


def check_restrictive_integrity(s: Snapshot, gt: GroundTruth, tau: Time) -> bool:
    """No region copied at or after tau changed between tau and its copy."""
    for r, c in enumerate(s):
        if c.t < tau:
            continue
        if value_at(gt, r, tau) != c.v:
            return False
        if any(v != c.v for _, v in gt.changes_between(r, tau, c.t)):
            return False
    return True


def check_permissive_integrity(s: Snapshot, gt: GroundTruth, tau: Time) -> bool:
    """Every region copied at or after tau holds its value at tau."""
    return all(c.v == value_at(gt, r, tau) for r, c in enumerate(s) if c.t >= tau)


def check_realtime_closed(comp: Computation, s: Snapshot) -> bool:
    """The induced cut contains every event up to its latest event's rt."""
    cut = induced_cut(comp, s)
    if not cut:
        return True
    latest = max(comp.by_id[e].rt for e in cut)
    return cut == realtime_prefix(comp, latest)


def timing_deltas(s: Snapshot, tau: Time) -> dict[str, float]:
    """
    Acquisition span and mean copy latency.

    span is the time between the first and the last copy; mean_latency is
    the average of s(r).t - tau over regions.
    """
    times = s.times
    return {
        'span': float(max(times) - min(times)),
        'mean_latency': sum(t - tau for t in times) / len(times),
    }


def classify(
    comp: Computation,
    gt: GroundTruth,
    s: Snapshot,
    tau: Time,
    order: Optional[CausalOrder] = None,
    window: bool = False,
) -> Verdict:
    """
    Runs every check on s and bundles the results.

    Args:
        comp: The computation
        gt: Its ground truth
        s: Snapshot to classify
        tau: Reference time of the integrity checks
        order: Causal order of comp (built if omitted)
        window: Restrict the quasi-instantaneous witness to [tau, last copy]

    Raises:
        LengthMismatch: If s does not hold one copy per region of comp
        InternalImplicationViolation: If the verdict contradicts an
            implication that holds for its inputs
    """
    if len(s) != comp.region_count:
        raise LengthMismatch(
            f"Snapshot has {len(s)} regions, computation has {comp.region_count}"
        )
    order = order or build_causal_order(comp)
    witness = check_quasi_instantaneous(s, gt, acquisition_window(s, tau) if window else None)
    verdict = Verdict(
        correct=check_correctness(s, gt),
        instantaneous=check_instantaneous(s),
        quasi_instantaneous=witness is not None,
        causal=check_causal(comp, order, s),
        restrictive_integrity=check_restrictive_integrity(s, gt, tau),
        permissive_integrity=check_permissive_integrity(s, gt, tau),
        tau=tau,
        quasi_witness=witness,
        realtime_closed=check_realtime_closed(comp, s),
        rt_consistent=rt_check(comp, s),
    )
    _assert_implications(verdict, started=tau <= min(s.times), window=window)
    logger.debug("Classified %r as %r", s, verdict)
    return verdict


def _assert_implications(v: Verdict, started: bool, window: bool) -> None:
    """
    Raises if v contradicts an implication that is a theorem for its inputs.

    The integrity implications need every copy at or after tau; those
    concluding quasi-instantaneous consistency from a copy time need correct
    values, and under a window the copy time must also lie inside it.
    """
    checks = [
        ('restrictive_integrity => permissive_integrity',
         v.restrictive_integrity, v.permissive_integrity),
        ('realtime_closed => causal', v.realtime_closed, v.causal),
    ]
    if started:
        checks += [
            ('permissive_integrity => quasi_instantaneous',
             v.permissive_integrity, v.quasi_instantaneous),
            ('restrictive_integrity => correct', v.restrictive_integrity, v.correct),
            ('instantaneous & correct => quasi_instantaneous',
             v.instantaneous and v.correct, v.quasi_instantaneous),
        ]
    if not window:
        checks += [
            ('realtime_closed & correct => quasi_instantaneous',
             v.realtime_closed and v.correct, v.quasi_instantaneous),
        ]
    for name, premise, conclusion in checks:
        if premise and not conclusion:
            raise InternalImplicationViolation(f"{name} violated by {v!r}")
