"""
Exact optimum for small instances and a cheap lower bound for any instance.
"""

from typing import Any, Literal

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from packing.baselines import bfd, ffd
from packing.config import config
from packing.core import Bin, Instance, Solution


class OracleLimits(BaseModel):
    """Limits past which the oracle answers NotSolved instead of searching."""

    model_config = ConfigDict(frozen=True)

    max_items: int = Field(default_factory=lambda: config.oracle_max_items, ge=0)
    node_budget: int = Field(default_factory=lambda: config.oracle_node_budget, ge=1)


class Solved(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: Literal["solved"] = "solved"
    bins: int
    solution: Solution
    nodes: int = 0

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = self.model_dump()
        return result


class NotSolved(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: Literal["not_solved"] = "not_solved"
    reason: str
    nodes: int = 0

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = self.model_dump()
        return result


OracleResult = Solved | NotSolved


def lower_bound(instance: Instance) -> int:
    """
    max(ceil(total size / capacity), number of items heavier than half a bin).

    Never exceeds the optimum: the first term is the volume bound and no two
    large items can share a bin.
    """
    return max(-(-instance.total_size // instance.capacity), instance.large_count)


class _BudgetExhausted(Exception):
    pass


class _BranchAndBound:
    """
    Depth-first search placing the items, largest first, into open bins or one new bin.

    The incumbent starts from a heuristic solution; the search stops as soon as it
    matches the lower bound.
    """

    def __init__(self, instance: Instance, incumbent: int, node_budget: int) -> None:
        self.capacity = instance.capacity
        self.sizes = instance.sizes
        self.order = sorted(range(instance.n), key=lambda item_id: (-instance.sizes[item_id], item_id))
        self.volume_bound = -(-instance.total_size // instance.capacity)
        self.lower = lower_bound(instance)
        self.node_budget = node_budget

        self.best_count = incumbent
        self.best_bins: list[list[int]] | None = None
        self.loads: list[int] = []
        self.contents: list[list[int]] = []
        self.nodes = 0

    def search(self) -> None:
        if self.best_count > self.lower:
            self._place(0)

    def _done(self) -> bool:
        return self.best_count == self.lower

    def _place(self, depth: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _BudgetExhausted

        if depth == len(self.order):
            if len(self.loads) < self.best_count:
                self.best_count = len(self.loads)
                self.best_bins = [list(members) for members in self.contents]
            return

        # Every remaining item still has to go somewhere, so the volume bound holds for the subtree
        if max(len(self.loads), self.volume_bound) >= self.best_count:
            return

        item_id = self.order[depth]
        size = self.sizes[item_id]

        # Step 1. Try each open bin, skipping bins whose load was already tried at this level
        tried: set[int] = set()
        for index, load in enumerate(self.loads):
            if load + size > self.capacity or load in tried:
                continue
            tried.add(load)
            self.loads[index] += size
            self.contents[index].append(item_id)
            self._place(depth + 1)
            self.contents[index].pop()
            self.loads[index] -= size
            if self._done():
                return

        # Step 2. Open a single new bin
        if len(self.loads) + 1 < self.best_count:
            self.loads.append(size)
            self.contents.append([item_id])
            self._place(depth + 1)
            self.contents.pop()
            self.loads.pop()


def optimal_bins(instance: Instance, limits: OracleLimits | None = None) -> OracleResult:
    """
    Finds the minimum number of bins for a small instance.

    Args:
        instance (Instance): The instance to solve
        limits (OracleLimits | None): Item and node limits, defaults from the packing settings

    Returns:
        OracleResult: Solved with an optimal Solution, or NotSolved when a limit was hit
    """
    limits = limits or OracleLimits()
    if instance.n > limits.max_items:
        return NotSolved(reason=f"n={instance.n} exceeds max_items={limits.max_items}")

    heuristic = min((ffd(instance), bfd(instance)), key=lambda solution: solution.bin_count)
    search = _BranchAndBound(instance, heuristic.bin_count, limits.node_budget)
    try:
        search.search()
    except _BudgetExhausted:
        logger.warning(f"Oracle gave up on {instance.name or 'instance'} after {limits.node_budget} nodes")
        return NotSolved(reason=f"node budget of {limits.node_budget} exhausted", nodes=search.nodes)

    if search.best_bins is None:
        bins = heuristic.bins
    else:
        bins = tuple(
            Bin(members=tuple(sorted(members)), load=sum(instance.sizes[i] for i in members))
            for members in search.best_bins
        )
    solution = Solution(capacity=instance.capacity, bins=bins, algorithm="oracle")
    logger.debug(f"Oracle solved n={instance.n} with {solution.bin_count} bins in {search.nodes} nodes")
    return Solved(bins=solution.bin_count, solution=solution, nodes=search.nodes)
