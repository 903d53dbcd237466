"""
First-Fit-Decreasing and Best-Fit-Decreasing, the reference heuristics of the comparison tables.
"""

from collections.abc import Callable

from loguru import logger

from packing.core import Bin, Instance, Solution


class _OpenBin:
    def __init__(self) -> None:
        self.members: list[int] = []
        self.load = 0

    def add(self, item_id: int, size: int) -> None:
        self.members.append(item_id)
        self.load += size

    def close(self) -> Bin:
        return Bin(members=tuple(sorted(self.members)), load=self.load)


def _decreasing_order(instance: Instance) -> list[int]:
    """Item ids by nonincreasing size, equal sizes in increasing id order."""
    return sorted(range(instance.n), key=lambda item_id: (-instance.sizes[item_id], item_id))


def _first_fit(open_bins: list[_OpenBin], size: int, capacity: int) -> _OpenBin | None:
    for candidate in open_bins:
        if candidate.load + size <= capacity:
            return candidate
    return None


def _best_fit(open_bins: list[_OpenBin], size: int, capacity: int) -> _OpenBin | None:
    best: _OpenBin | None = None
    for candidate in open_bins:
        # Strict comparison keeps the lowest index among equally loaded bins
        if candidate.load + size <= capacity and (best is None or candidate.load > best.load):
            best = candidate
    return best


def _pack_decreasing(
    instance: Instance,
    choose: Callable[[list[_OpenBin], int, int], _OpenBin | None],
    algorithm: str,
) -> Solution:
    open_bins: list[_OpenBin] = []
    for item_id in _decreasing_order(instance):
        size = instance.sizes[item_id]
        target = choose(open_bins, size, instance.capacity)
        if target is None:
            target = _OpenBin()
            open_bins.append(target)
        target.add(item_id, size)

    solution = Solution(
        capacity=instance.capacity,
        bins=tuple(open_bin.close() for open_bin in open_bins),
        algorithm=algorithm,
    )
    logger.debug(f"{algorithm} packed {instance.n} items into {solution.bin_count} bins")
    return solution


def ffd(instance: Instance) -> Solution:
    """
    First-Fit-Decreasing: each item, largest first, goes to the lowest-indexed bin where it fits.

    Args:
        instance (Instance): The instance to pack

    Returns:
        Solution: the packing, bins in opening order
    """
    return _pack_decreasing(instance, _first_fit, "ffd")


def bfd(instance: Instance) -> Solution:
    """
    Best-Fit-Decreasing: each item, largest first, goes to the fullest bin where it fits
    (lowest index on ties).

    Args:
        instance (Instance): The instance to pack

    Returns:
        Solution: the packing, bins in opening order
    """
    return _pack_decreasing(instance, _best_fit, "bfd")


ALGORITHMS: dict[str, Callable[[Instance], Solution]] = {
    "ffd": ffd,
    "bfd": bfd,
}
