from collections.abc import Callable

import numpy as np
import pytest

from packing.core import Instance

InstanceFactory = Callable[[int, int, int], Instance]


def brute_force_optimum(instance: Instance) -> int:
    """Minimum bin count by enumerating every assignment of items to bins."""
    best = instance.n
    loads: list[int] = []

    def assign(depth: int) -> None:
        nonlocal best
        if len(loads) >= best:
            return
        if depth == instance.n:
            best = len(loads)
            return
        size = instance.sizes[depth]
        for index in range(len(loads)):
            if loads[index] + size <= instance.capacity:
                loads[index] += size
                assign(depth + 1)
                loads[index] -= size
        loads.append(size)
        assign(depth + 1)
        loads.pop()

    assign(0)
    return best


@pytest.fixture
def random_instance() -> InstanceFactory:
    """Builds a random instance of 0..max_n items from a seed, with sizes spread over the whole capacity."""

    def build(seed: int, max_n: int, capacity: int = 100) -> Instance:
        rng = np.random.default_rng(seed)
        n = int(rng.integers(0, max_n + 1))
        sizes = tuple(int(size) for size in rng.integers(1, capacity, size=n, endpoint=True))
        return Instance(capacity=capacity, sizes=sizes, name=f"random-{seed}")

    return build


def off_decile_edges(instance: Instance) -> Instance:
    """Moves every size sitting exactly on a decile edge one unit down, keeping the rest of the instance."""
    sizes = tuple(size - 1 if size > 1 and (10 * size) % instance.capacity == 0 else size for size in instance.sizes)
    return Instance(capacity=instance.capacity, sizes=sizes, name=instance.name)
