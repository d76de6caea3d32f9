"""
Linked-list workload.

Simulates a doubly linked list whose elements are the memory regions,
modified by a static set of processes:
- unlink: remove a node, touching its predecessor, itself and its successor
- relink: insert the node a process holds after another node, touching the
  new predecessor, the node and the new successor
- buffer: overwrite a node's data buffer, touching the node only

Every operation emits its touches as consecutive writes of one process. Under
the mixed regime each event is instead a read (a traversal to a node) with
probability read_fraction, so reads may fall between an operation's writes.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

import numpy as np

from ..errors import InvalidConfig
from .base import BaseWorkload, EventLog, WorkloadConfig


class _List:
    """Node order of the list plus the nodes held (unlinked) by processes."""

    def __init__(self, node_count: int, process_count: int):
        self.order = list(range(node_count))
        self.held: list[Optional[int]] = [None] * process_count

    def deref(self, node: Optional[int]) -> Optional[int]:
        if node is not None and node not in self.order:
            raise RuntimeError(f"Dereferenced unlinked node {node}")
        return node

    def neighbours(self, node: int) -> tuple[Optional[int], Optional[int]]:
        i = self.order.index(node)
        prev = self.order[i - 1] if i > 0 else None
        nxt = self.order[i + 1] if i + 1 < len(self.order) else None
        return prev, nxt

    def unlink(self, p: int, node: int) -> list[int]:
        prev, nxt = self.neighbours(self.deref(node))
        touched = [n for n in (self.deref(prev), node, self.deref(nxt)) if n is not None]
        self.order.remove(node)
        self.held[p] = node
        return touched

    def relink(self, p: int, after: int) -> list[int]:
        node = self.held[p]
        _, nxt = self.neighbours(self.deref(after))
        touched = [n for n in (after, node, self.deref(nxt)) if n is not None]
        self.order.insert(self.order.index(after) + 1, node)
        self.held[p] = None
        return touched


class LinkedListWorkload(BaseWorkload):
    """Processes unlink, relink and overwrite elements of a shared list."""

    name = "linked_list"
    description = "Doubly linked list modified by multiple processes"

    # probability that a process without a held node overwrites a buffer
    BUFFER_WRITE_PROBABILITY = 0.5

    def validate(self, config: WorkloadConfig) -> None:
        if config.region_count < 1:
            raise InvalidConfig("linked_list needs at least one node")

    def _run(self, log: EventLog, rng: np.random.Generator) -> None:
        config = log.config
        nodes = _List(config.region_count, config.process_count)
        # touches of the current operation not yet emitted, as (process, node)
        pending: deque[tuple[int, int]] = deque()

        while not log.full:
            if log.draw_read():
                p = int(rng.integers(config.process_count))
                log.read(p, nodes.deref(nodes.order[rng.integers(len(nodes.order))]))
                continue

            if not pending:
                p = int(rng.integers(config.process_count))
                pending.extend((p, node) for node in self._operation(nodes, p, rng))
            log.write(*pending.popleft())

    def _operation(self, nodes: _List, p: int, rng: np.random.Generator) -> list[int]:
        """Applies one list operation of process p and returns the nodes it touches."""
        if nodes.held[p] is not None:
            return nodes.relink(p, nodes.order[rng.integers(len(nodes.order))])
        if len(nodes.order) < 2 or rng.random() < self.BUFFER_WRITE_PROBABILITY:
            return [nodes.deref(nodes.order[rng.integers(len(nodes.order))])]
        return nodes.unlink(p, nodes.order[rng.integers(len(nodes.order))])
