"""
Happened-before relation, cut consistency and the lattice of consistent cuts.

The causal order is the smallest transitive relation containing
process-adjacency and region-adjacency edges. It is materialized eagerly as a
boolean reachability matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import SameEvent, TooLarge
from .model import Computation, Cut, EventId

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_BOUND = 20


@dataclass(frozen=True, eq=False)
class CausalOrder:
    """
    Transitively closed predecessor sets.

    before[i, j] is True iff event_ids[j] -> event_ids[i].
    """
    event_ids: tuple[EventId, ...]
    before: np.ndarray
    index: dict[EventId, int] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, 'index', {e: i for i, e in enumerate(self.event_ids)})

    def predecessors(self, e: EventId) -> frozenset[EventId]:
        row = self.before[self.index[e]]
        return frozenset(self.event_ids[j] for j in np.flatnonzero(row))

    def pairs(self) -> list[tuple[EventId, EventId]]:
        """All (e, f) with e -> f."""
        fs, es = np.nonzero(self.before)
        return sorted((self.event_ids[e], self.event_ids[f]) for f, e in zip(fs, es))

    def __len__(self):
        return int(self.before.sum())

    def __repr__(self):
        return f"CausalOrder(events={len(self.event_ids)}, pairs={len(self)})"


def build_causal_order(comp: Computation) -> CausalOrder:
    """Builds the transitive closure of process and region adjacency."""
    m = len(comp.events)
    before = np.zeros((m, m), dtype=bool)
    last_of_process: dict[int, int] = {}
    last_of_region: dict[int, int] = {}

    # events are rt-sorted, so both immediate predecessors are already closed
    for k, e in enumerate(comp.events):
        for prev in (last_of_process.get(e.p), last_of_region.get(e.r)):
            if prev is not None:
                before[k] |= before[prev]
                before[k, prev] = True
        last_of_process[e.p] = k
        last_of_region[e.r] = k

    logger.debug("Built causal order over %d events", m)
    return CausalOrder(tuple(comp.event_ids), before)


def happened_before(order: CausalOrder, e: EventId, f: EventId) -> bool:
    """True iff e -> f."""
    return bool(order.before[order.index[f], order.index[e]])


def concurrent(order: CausalOrder, e: EventId, f: EventId) -> bool:
    """
    True iff neither e -> f nor f -> e.

    Raises:
        SameEvent: If e == f
    """
    if e == f:
        raise SameEvent(f"Concurrency is defined for distinct events, got e{e} twice")
    return not happened_before(order, e, f) and not happened_before(order, f, e)


def _mask(order: CausalOrder, c: Iterable[EventId]) -> np.ndarray:
    mask = np.zeros(len(order.event_ids), dtype=bool)
    for e in c:
        if e not in order.index:
            raise ValueError(f"Cut references unknown event e{e}")
        mask[order.index[e]] = True
    return mask


def is_consistent_cut(comp: Computation, order: CausalOrder, c: Cut) -> bool:
    """
    True iff c is closed under ->.

    Closure under -> implies the per-region prefix condition, since
    consecutive events of a region are causally ordered.
    """
    mask = _mask(order, c)
    if not mask.any():
        return True
    missing = order.before[mask] & ~mask
    return not bool(missing.any())


def enumerate_consistent_cuts(
    comp: Computation,
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> list[Cut]:
    """
    Lists every consistent cut, sorted by cardinality then lexicographically.

    Args:
        comp: The computation
        bound: Maximum event count accepted

    Raises:
        TooLarge: If comp has more than bound events
    """
    m = len(comp.events)
    if m > bound:
        raise TooLarge(f"Computation has {m} events, enumeration bound is {bound}")
    if m > bound - 2:
        logger.warning("Enumerating cuts of %d events; output may be large", m)

    order = build_causal_order(comp)
    pred_masks = [
        sum(1 << int(j) for j in np.flatnonzero(order.before[i])) for i in range(m)
    ]

    seen = {0}
    frontier = [0]
    while frontier:
        next_frontier = []
        for cut in frontier:
            for i in range(m):
                bit = 1 << i
                if cut & bit or pred_masks[i] & ~cut:
                    continue
                grown = cut | bit
                if grown not in seen:
                    seen.add(grown)
                    next_frontier.append(grown)
        frontier = next_frontier

    cuts = [
        frozenset(comp.events[i].id for i in range(m) if mask >> i & 1) for mask in seen
    ]
    return sorted(cuts, key=lambda c: (len(c), sorted(c)))


def lattice_edges(cuts: list[Cut]) -> list[tuple[int, int]]:
    """
    Covering relation of a list of cuts, as index pairs (lower, upper).

    upper covers lower when it holds exactly one more event.
    """
    position = {c: i for i, c in enumerate(cuts)}
    edges = []
    for j, upper in enumerate(cuts):
        for e in sorted(upper):
            i = position.get(upper - {e})
            if i is not None:
                edges.append((i, j))
    return sorted(edges)
