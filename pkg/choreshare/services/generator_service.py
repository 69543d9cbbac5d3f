import logging
from typing import Optional, Tuple

import numpy as np

from choreshare.core.config import Settings
from choreshare.core.errors import PreconditionError
from choreshare.core.models import (
    BinPackingSpec,
    ChoreInstance,
    CoveringPlaneSpec,
    JobSchedulingSpec,
)
from choreshare.services.validation_service import covering_points

# Three agents, nine items, capacity 43: every allocation leaves some agent needing two bins.
FEIGE_SIZES = (
    (6, 15, 22, 26, 10, 7, 12, 19, 12),
    (6, 15, 23, 26, 10, 8, 11, 18, 12),
    (6, 16, 22, 27, 10, 7, 11, 18, 12),
)
FEIGE_CAPACITY = 43

GENERATORS = ("random-binpacking", "random-jobscheduling", "covering-planes", "feige", "propx")


class GeneratorService:
    def __init__(self, settings: Settings):
        self.settings = settings
        logging.info("GeneratorService initialized.")

    # --- Lower-bound constructions ---

    def gen_covering_planes(self, n: int) -> ChoreInstance:
        if not 2 <= n <= 4:
            raise PreconditionError("Covering-plane instances need 2 <= n <= 4.")
        points = covering_points(n)
        return ChoreInstance(
            n=n,
            m=len(points),
            valuation_spec=CoveringPlaneSpec(dimension=n, points=points),
        )

    def gen_feige_binpacking(self) -> ChoreInstance:
        return ChoreInstance(
            n=3,
            m=9,
            sizes=FEIGE_SIZES,
            valuation_spec=BinPackingSpec(capacities=(FEIGE_CAPACITY,) * 3),
        )

    def gen_propx_instances(self, n: int) -> Tuple[ChoreInstance, ChoreInstance]:
        """
        Bin packing: n agents, n+1 unit items, capacity n+1 (one bin holds everything).
        Scheduling: 2n agents, 2n+1 unit jobs, 2n unit-speed machines each.
        """
        if n < 1:
            raise PreconditionError("PROPX instances need n >= 1.")
        bins = ChoreInstance(
            n=n,
            m=n + 1,
            sizes=((1,) * (n + 1),) * n,
            valuation_spec=BinPackingSpec(capacities=(n + 1,) * n),
        )
        jobs = ChoreInstance(
            n=2 * n,
            m=2 * n + 1,
            sizes=((1,) * (2 * n + 1),) * (2 * n),
            valuation_spec=JobSchedulingSpec(speeds=((1,) * (2 * n),) * (2 * n)),
        )
        return bins, jobs

    # --- Random families ---

    def random_bin_packing(self, n: int, m: int, seed: int, max_capacity: Optional[int] = None) -> ChoreInstance:
        """Capacities uniform in [1, max_capacity], each agent's sizes uniform in [1, c_i]."""
        self._require_counts(n, m)
        max_capacity = max_capacity or self.settings.bench.max_capacity
        rng = np.random.default_rng(seed)
        capacities = tuple(int(c) for c in rng.integers(1, max_capacity + 1, size=n))
        sizes = tuple(tuple(int(s) for s in rng.integers(1, c + 1, size=m)) for c in capacities)
        return ChoreInstance(n=n, m=m, sizes=sizes, valuation_spec=BinPackingSpec(capacities=capacities))

    def random_job_scheduling(
        self,
        n: int,
        m: int,
        seed: int,
        max_machines: Optional[int] = None,
        max_speed: Optional[int] = None,
        max_size: Optional[int] = None,
    ) -> ChoreInstance:
        """Per agent 1..max_machines machines with speeds in [1, max_speed], sorted; sizes in [1, max_size]."""
        self._require_counts(n, m)
        bench = self.settings.bench
        max_machines = max_machines or bench.max_machines
        max_speed = max_speed or bench.max_speed
        max_size = max_size or bench.max_size
        rng = np.random.default_rng(seed)
        speeds = []
        for _ in range(n):
            k = int(rng.integers(1, max_machines + 1))
            speeds.append(tuple(sorted((int(s) for s in rng.integers(1, max_speed + 1, size=k)), reverse=True)))
        sizes = tuple(tuple(int(s) for s in rng.integers(1, max_size + 1, size=m)) for _ in range(n))
        return ChoreInstance(n=n, m=m, sizes=sizes, valuation_spec=JobSchedulingSpec(speeds=tuple(speeds)))

    @staticmethod
    def _require_counts(n: int, m: int):
        if n < 1 or m < 0:
            raise PreconditionError("Need n >= 1 agents and m >= 0 items.")
