"""
Uniform random workload.

Every tick a uniformly chosen process accesses a uniformly chosen region.
Under the mixed regime the access is a read with probability read_fraction.
"""

import numpy as np

from .base import BaseWorkload, EventLog


class RandomWorkload(BaseWorkload):
    """Processes access regions uniformly at random."""

    name = "random"
    description = "Uniformly random accesses by all processes"

    def _run(self, log: EventLog, rng: np.random.Generator) -> None:
        config = log.config
        while not log.full:
            p = rng.integers(config.process_count)
            r = rng.integers(config.region_count)
            if log.draw_read():
                log.read(p, r)
            else:
                log.write(p, r)
