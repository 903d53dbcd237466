"""
Scaling benchmark of the ranger: median run time per instance size, excluding generation and I/O.
"""

import time
from collections.abc import Sequence

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict

from packing.config import config as packing_config
from packing.generators import gen_uniform
from packing.ranger import make_strategy, run

# Each state-machine iteration probes at most this many buckets
MAX_PROBES_PER_ITEM = 5


class BenchRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    repeats: int
    median_ns: int
    ns_per_item: float
    growth: float | None = None
    probes: int
    probes_within_bound: bool


def bench(
    sizes: Sequence[int],
    repeats: int,
    strategy: str = "random",
    seed: int = 0,
    capacity: int | None = None,
) -> list[BenchRow]:
    """
    Times the ranger on a uniform instance of every size.

    Args:
        sizes (Sequence[int]): Instance sizes, in report order
        repeats (int): Runs per size; the median is reported
        strategy (str): Probe strategy
        seed (int): Seed of the instances and of the random strategy
        capacity (int | None): Bin capacity, defaults to the packing settings

    Returns:
        list[BenchRow]: one row per size; `growth` is the ratio to the previous row's median
    """
    if repeats < 1:
        raise ValueError(f"repeats must be at least 1, got {repeats}")

    capacity = capacity or packing_config.default_capacity
    rows: list[BenchRow] = []
    previous: int | None = None
    for n in sizes:
        generated = gen_uniform(n, 1, capacity, seed, capacity)
        instance = generated.instance
        probe_strategy = make_strategy(strategy, seed)

        timings: list[int] = []
        probes = 0
        for _ in range(repeats):
            start = time.perf_counter_ns()
            result = run(instance, probe_strategy)
            timings.append(time.perf_counter_ns() - start)
            probes = result.counters.probes

        median = int(np.median(timings))
        rows.append(
            BenchRow(
                n=n,
                repeats=repeats,
                median_ns=median,
                ns_per_item=median / n if n else 0.0,
                growth=median / previous if previous else None,
                probes=probes,
                probes_within_bound=probes <= MAX_PROBES_PER_ITEM * n,
            )
        )
        previous = median
        logger.info(f"n={n}: median {median / 1e6:.1f} ms over {repeats} run(s), {probes} probes")

    return rows


def bench_table(rows: Sequence[BenchRow]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows], columns=list(BenchRow.model_fields))
