#!/usr/bin/env python3
"""
Monte Carlo engine
Runs independent trials of one grid point across worker threads and tallies
them per decoder arm. Trials are executed in index-ordered batches and the
point stops at the first trial index where every stop arm has its target
number of block errors, so the tallies never depend on the thread count.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Optional, Sequence

from core.hardware_monitor import get_hardware_monitor
from core.logging_setup import LoggingMixin
from harness.experiment_config import StopRule


@dataclass(frozen=True)
class TrialRecord:
    """One arm's outcome for one trial"""
    block_error: bool
    residual_weight: int
    iterations: int
    logical_failure: bool = False


@dataclass
class ArmTally:
    trials: int = 0
    block_errors: int = 0
    residual_weight: int = 0
    iterations: int = 0
    logical_failures: int = 0

    def add(self, record: TrialRecord):
        self.trials += 1
        self.block_errors += int(record.block_error)
        self.residual_weight += record.residual_weight
        self.iterations += record.iterations
        self.logical_failures += int(record.logical_failure)


TrialFn = Callable[[int], Dict[str, TrialRecord]]


class MonteCarloEngine(LoggingMixin):
    """Deterministic parallel trial runner"""

    def __init__(self, threads: int = 0, batch_size: int = 64):
        self.threads = threads if threads > 0 else get_hardware_monitor().default_threads()
        self.batch_size = max(1, batch_size)

    def _run_batch(self, executor: Optional[ThreadPoolExecutor], trial_fn: TrialFn,
                   indices: Iterable[int]):
        if executor is None:
            return [trial_fn(i) for i in indices]
        # map yields in submission order whatever order the workers finish in
        return list(executor.map(trial_fn, indices))

    def run_point(self, trial_fn: TrialFn, arms: Sequence[str], stop_rule: StopRule,
                  stop_arms: Optional[Sequence[str]] = None, label: str = "") -> Dict[str, ArmTally]:
        """Run trials 0, 1, ... until every stop arm reaches the target or max_trials is hit"""
        stop_arms = list(stop_arms) if stop_arms is not None else list(arms)
        tallies = {arm: ArmTally() for arm in arms}
        start_time = time.perf_counter()
        next_index = 0
        finished = False

        executor = ThreadPoolExecutor(max_workers=self.threads) if self.threads > 1 else None
        try:
            while not finished and next_index < stop_rule.max_trials:
                end = min(next_index + self.batch_size, stop_rule.max_trials)
                for records in self._run_batch(executor, trial_fn, range(next_index, end)):
                    for arm in arms:
                        tallies[arm].add(records[arm])
                    if all(tallies[arm].block_errors >= stop_rule.target_block_errors for arm in stop_arms):
                        # records past this index are discarded
                        finished = True
                        break
                next_index = end
        finally:
            if executor is not None:
                executor.shutdown(wait=True)

        duration = time.perf_counter() - start_time
        summary = {arm: f"{t.block_errors}/{t.trials}" for arm, t in tallies.items()}
        self.logger.log_performance(f"point {label}".strip(), duration, threads=self.threads, **summary)
        if not finished:
            self.logger.debug(f"Point {label} hit max_trials={stop_rule.max_trials} before the error target")
        return tallies
