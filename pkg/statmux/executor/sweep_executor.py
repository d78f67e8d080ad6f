"""
Concurrent sweep executor: fans independent runs (scenario classes x seeds)
out over a thread pool. Each run owns its random generators, so results do
not depend on scheduling.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from ..errors import InvalidArgumentError
from .multiplex_executor import RunConfig, RunResult, compare_runs, run_multiplex

logger = logging.getLogger(__name__)


@dataclass
class SweepResult:
    """Results in submission order."""

    results: List[RunResult]
    total_duration: float

    def by_seed(self) -> Dict[int, List[RunResult]]:
        grouped: Dict[int, List[RunResult]] = {}
        for result in self.results:
            grouped.setdefault(result.seed, []).append(result)
        return grouped


class SweepExecutor:
    """Runs many RunConfigs, optionally on several worker threads."""

    def __init__(self, jobs: int = 1):
        """Initialize the sweep executor.

        Args:
            jobs: Number of worker threads
        """
        if jobs < 1:
            raise InvalidArgumentError(f"jobs must be at least 1, got {jobs}")
        self.jobs = jobs

    def run(self, configs: Sequence[RunConfig]) -> SweepResult:
        logger.info(f"Starting sweep of {len(configs)} runs with {self.jobs} worker(s)")
        start_time = time.time()

        # Serial path, no pool
        if self.jobs == 1:
            results = [run_multiplex(config) for config in configs]
        else:
            results: List[RunResult] = [None] * len(configs)
            # Map each future back to its submission slot
            with ThreadPoolExecutor(max_workers=self.jobs) as executor:
                futures = {
                    executor.submit(run_multiplex, config): index
                    for index, config in enumerate(configs)
                }
                for done, future in enumerate(as_completed(futures), start=1):
                    results[futures[future]] = future.result()
                    logger.debug(f"Sweep progress: {done}/{len(configs)} runs finished")

        total_duration = time.time() - start_time
        logger.info(f"Sweep finished in {total_duration:.2f} seconds")
        return SweepResult(results=results, total_duration=total_duration)


def pack_saving(results: Sequence[RunResult], baseline: str, candidate: str) -> float:
    """Mean of the per-class savings of one pack realization."""
    if not results:
        raise InvalidArgumentError("no runs to compare")
    return float(
        np.mean([compare_runs(r, baseline, candidate).average_saving for r in results])
    )


def run_sweep(configs: Sequence[RunConfig], jobs: int = 1) -> List[RunResult]:
    """Run every config; results come back in the order of `configs`."""
    return SweepExecutor(jobs).run(configs).results
