"""
Exact-arithmetic data model shared by every packing algorithm.

Weights are never stored as floats: an item of size `s` in an instance of capacity `C`
weighs exactly `s / C`, and every feasibility test is an integer comparison against `C`.
"""

from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

NUM_RANGES = 10


def range_index(load: int, capacity: int) -> int:
    """
    Returns the decile bucket of a load: min(floor(10 * load / capacity), 9).

    Deciles are half-open, [k/10, (k+1)/10), except that the top bucket also holds a
    load equal to the full capacity. A load of exactly half the capacity lands in bucket 5.

    Args:
        load (int): Total size of an item or composite, at least 1
        capacity (int): Bin capacity, at least 1

    Returns:
        int: Bucket index in 0..9
    """
    if load <= 0 or capacity <= 0:
        raise ValueError(f"range_index needs a positive load and capacity, got load={load}, capacity={capacity}")
    return min(NUM_RANGES * load // capacity, NUM_RANGES - 1)


class Item(BaseModel):
    """A single input object, identified by its dense position in the instance."""

    model_config = ConfigDict(frozen=True)

    id: int = Field(ge=0)
    size: int = Field(ge=1)


class Instance(BaseModel):
    """
    A bin packing instance: a capacity and the item sizes, both in integer units.

    Attributes:
        capacity (int): Bin capacity, at least 1
        sizes (tuple[int, ...]): Item sizes, each in [1, capacity]; item `i` has size `sizes[i]`
        name (str | None): Optional label used in reports
    """

    model_config = ConfigDict(frozen=True)

    capacity: int = Field(ge=1)
    sizes: tuple[int, ...] = ()
    name: str | None = None

    @model_validator(mode="after")
    def _check_sizes(self) -> "Instance":
        if self.sizes and (min(self.sizes) < 1 or max(self.sizes) > self.capacity):
            item_id, size = next((i, s) for i, s in enumerate(self.sizes) if not 1 <= s <= self.capacity)
            raise ValueError(f"item {item_id} has size {size}, expected 1 <= size <= {self.capacity}")
        return self

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def total_size(self) -> int:
        return sum(self.sizes)

    @property
    def large_count(self) -> int:
        """Number of items heavier than half a bin; no two of them can share a bin."""
        return sum(1 for size in self.sizes if 2 * size > self.capacity)

    def items(self) -> list[Item]:
        return [Item(id=item_id, size=size) for item_id, size in enumerate(self.sizes)]

    def weight(self, item_id: int) -> Fraction:
        return Fraction(self.sizes[item_id], self.capacity)

    def scaled(self, factor: int) -> "Instance":
        """Returns the same instance with capacity and every size multiplied by `factor`."""
        if factor < 1:
            raise ValueError(f"scale factor must be a positive integer, got {factor}")
        return Instance(
            capacity=self.capacity * factor,
            sizes=tuple(size * factor for size in self.sizes),
            name=self.name,
        )

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = self.model_dump()
        return result


class Bin(BaseModel):
    """
    A closed bin: the original ids of the items it holds and their total size.

    Members and load are taken as given; `validate_solution` reports empty bins and wrong loads.
    """

    model_config = ConfigDict(frozen=True)

    members: tuple[int, ...]
    load: int


class Solution(BaseModel):
    """
    The full result of one packing run.

    The capacity is stored alongside the bins so the statistics (bin count, total slack and
    minimum fill) can be computed without the instance at hand.
    """

    model_config = ConfigDict(frozen=True)

    capacity: int = Field(ge=1)
    bins: tuple[Bin, ...] = ()
    algorithm: str
    strategy: str | None = None
    seed: int | None = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def bin_count(self) -> int:
        return len(self.bins)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total_slack(self) -> int:
        return sum(self.capacity - b.load for b in self.bins)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def min_fill(self) -> float | None:
        fraction = self.min_fill_fraction()
        return None if fraction is None else float(fraction)

    def min_fill_fraction(self) -> Fraction | None:
        """Exact load of the emptiest bin as a fraction of the capacity, None for an empty solution."""
        if not self.bins:
            return None
        return Fraction(min(b.load for b in self.bins), self.capacity)

    def to_dict(self) -> dict[str, Any]:
        """Convert the Solution to a dictionary, statistics included."""
        result: dict[str, Any] = self.model_dump()
        return result


ViolationKind = Literal["missing", "duplicate", "unknown", "overfull", "load_mismatch", "empty_bin"]


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ViolationKind
    detail: str
    bin_index: int | None = None
    item_id: int | None = None


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    ok: bool
    violations: tuple[Violation, ...] = ()


def validate_solution(instance: Instance, solution: Solution) -> ValidationReport:
    """
    Checks that a solution is an exact partition of the instance into feasible bins.

    The solution is ok iff every bin holds at least one item, every item id appears in exactly
    one bin, every bin's recomputed load fits the instance capacity, and every stored load matches
    the recomputed one.
    Problems are collected, never raised.

    Args:
        instance (Instance): The instance the solution claims to pack
        solution (Solution): The solution to check

    Returns:
        ValidationReport: ok flag plus the list of violations found
    """
    n = instance.n
    owner = [-1] * n
    violations: list[Violation] = []

    for bin_index, packed in enumerate(solution.bins):
        if not packed.members:
            violations.append(Violation(kind="empty_bin", detail=f"bin {bin_index} holds no items", bin_index=bin_index))
        recomputed = 0
        for item_id in packed.members:
            if not 0 <= item_id < n:
                violations.append(
                    Violation(
                        kind="unknown",
                        detail=f"bin {bin_index} holds unknown item {item_id}",
                        bin_index=bin_index,
                        item_id=item_id,
                    )
                )
                continue
            if owner[item_id] >= 0:
                violations.append(
                    Violation(
                        kind="duplicate",
                        detail=f"item {item_id} packed in bin {owner[item_id]} and again in bin {bin_index}",
                        bin_index=bin_index,
                        item_id=item_id,
                    )
                )
            else:
                owner[item_id] = bin_index
            recomputed += instance.sizes[item_id]

        if recomputed > instance.capacity:
            violations.append(
                Violation(
                    kind="overfull",
                    detail=f"bin {bin_index} is overfull ({recomputed} > {instance.capacity})",
                    bin_index=bin_index,
                )
            )
        if recomputed != packed.load:
            violations.append(
                Violation(
                    kind="load_mismatch",
                    detail=f"bin {bin_index} stores load {packed.load} but its items sum to {recomputed}",
                    bin_index=bin_index,
                )
            )

    violations.extend(
        Violation(kind="missing", detail=f"item {item_id} is not packed", item_id=item_id)
        for item_id in range(n)
        if owner[item_id] < 0
    )

    return ValidationReport(ok=not violations, violations=tuple(violations))
