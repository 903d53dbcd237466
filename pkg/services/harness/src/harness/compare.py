"""
Runs several algorithms over several instances and collects one ResultRecord per run.
"""

import time
from collections.abc import Sequence

from loguru import logger
from pydantic import BaseModel, ConfigDict

from packing.baselines import ALGORITHMS
from packing.core import Instance, Solution, validate_solution
from packing.errors import InvariantViolation
from packing.oracle import OracleLimits, Solved, lower_bound, optimal_bins
from packing.ranger import SeededRandom, make_strategy, pack
from packing.serialization import ResultRecord

ALGORITHM_NAMES = ("ranger", *ALGORITHMS)


class ComparisonCase(BaseModel):
    """An instance to compare on, with the optimum its generator declares (if any)."""

    model_config = ConfigDict(frozen=True)

    instance: Instance
    optimum: int | None = None


def run_algorithm(instance: Instance, algorithm: str, strategy: str = "random", seed: int = 0) -> tuple[Solution, int]:
    """
    Packs an instance with the named algorithm and checks the result.

    Args:
        instance (Instance): The instance to pack
        algorithm (str): "ranger", "ffd" or "bfd"
        strategy (str): Probe strategy of the ranger
        seed (int): Seed of the random probe strategy

    Returns:
        tuple[Solution, int]: the solution and the elapsed wall time in nanoseconds

    Raises:
        InvariantViolation: if the solution is not a valid packing of the instance
    """
    if algorithm == "ranger":
        probe_strategy = make_strategy(strategy, seed)
        start = time.perf_counter_ns()
        solution = pack(instance, probe_strategy)
    elif algorithm in ALGORITHMS:
        start = time.perf_counter_ns()
        solution = ALGORITHMS[algorithm](instance)
    else:
        raise ValueError(f"Unknown algorithm {algorithm!r}, expected one of {', '.join(ALGORITHM_NAMES)}")
    elapsed = time.perf_counter_ns() - start

    report = validate_solution(instance, solution)
    if not report.ok:
        details = "; ".join(violation.detail for violation in report.violations)
        raise InvariantViolation(f"{algorithm} produced an invalid packing of {instance.name}: {details}")
    return solution, elapsed


def best_known_optimum(case: ComparisonCase, oracle_max_n: int) -> int | None:
    """Oracle optimum when the instance is small enough and solved, else the declared optimum."""
    if case.instance.n <= oracle_max_n:
        outcome = optimal_bins(case.instance, OracleLimits(max_items=oracle_max_n))
        if isinstance(outcome, Solved):
            if case.optimum is not None and case.optimum != outcome.bins:
                logger.warning(
                    f"Declared optimum {case.optimum} of {case.instance.name} disagrees with the oracle ({outcome.bins})"
                )
            return outcome.bins
    return case.optimum


def compare(
    cases: Sequence[ComparisonCase],
    algorithms: Sequence[str],
    seeds: Sequence[int],
    strategy: str = "random",
    oracle_max_n: int = 12,
) -> list[ResultRecord]:
    """
    Runs every algorithm on every case, in input order.

    The ranger runs once per seed when its strategy is random; deterministic algorithms run
    once per instance.

    Args:
        cases (Sequence[ComparisonCase]): Instances with their declared optima
        algorithms (Sequence[str]): Algorithm names
        seeds (Sequence[int]): Seeds of the random probe strategy
        strategy (str): Probe strategy of the ranger
        oracle_max_n (int): Largest instance solved exactly; 0 disables the oracle

    Returns:
        list[ResultRecord]: one record per run
    """
    unknown = [name for name in algorithms if name not in ALGORITHM_NAMES]
    if unknown:
        raise ValueError(f"Unknown algorithm(s) {', '.join(unknown)}, expected one of {', '.join(ALGORITHM_NAMES)}")

    records: list[ResultRecord] = []
    for index, case in enumerate(cases):
        instance = case.instance
        name = instance.name or f"instance-{index}"
        bound = lower_bound(instance)
        optimum = best_known_optimum(case, oracle_max_n)

        for algorithm in algorithms:
            randomized = algorithm == "ranger" and strategy == SeededRandom.name
            for seed in seeds if randomized else [None]:
                solution, elapsed = run_algorithm(instance, algorithm, strategy, seed or 0)
                records.append(
                    ResultRecord(
                        instance=name,
                        algorithm=algorithm,
                        seed=seed,
                        bins=solution.bin_count,
                        lower_bound=bound,
                        optimum=optimum,
                        ratio=solution.bin_count / optimum if optimum else None,
                        elapsed_ns=elapsed,
                        n=instance.n,
                    )
                )
        logger.info(f"Compared {len(algorithms)} algorithm(s) on {name} (n={instance.n}, optimum={optimum})")

    return records
