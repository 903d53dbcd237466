"""
Instance families for the worst-case constructions and random workloads.

Every generator is a pure function of its parameters and seed. Families built with a
known optimum return it alongside the instance so the harness can report ratios on
instances too large for the oracle.
"""

from typing import Any, Literal

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from packing.config import config
from packing.core import NUM_RANGES, Instance, range_index

Family = Literal["complementary", "range", "triplets", "uniform"]
FAMILIES: tuple[Family, ...] = ("complementary", "range", "triplets", "uniform")


class FamilySpec(BaseModel):
    """
    Flat parameter set for any family; each generator reads only the fields it needs.

    Attributes:
        family (Family): Which generator to run
        k (int | None): Number of complementary pairs
        m_decile (int): Decile of the large items of a complementary family, 5..9
        delta (int | None): Spread between consecutive large items, in size units
        n (int | None): Number of items of the range and uniform families
        decile (int | None): Decile of the range family, 0..9
        m (int | None): Number of triples
        lo (int | None): Smallest uniform size
        hi (int | None): Largest uniform size
        seed (int): Seed of the random families
        capacity (int): Bin capacity
    """

    model_config = ConfigDict(frozen=True)

    family: Family
    k: int | None = None
    m_decile: int = 6
    delta: int | None = None
    n: int | None = None
    decile: int | None = None
    m: int | None = None
    lo: int | None = None
    hi: int | None = None
    seed: int = 0
    capacity: int = Field(default_factory=lambda: config.default_capacity, ge=1)


class GeneratedInstance(BaseModel):
    model_config = ConfigDict(frozen=True)

    instance: Instance
    family: Family
    optimum: int | None = None

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = self.model_dump()
        return result


def gen_complementary_pair(
    k: int,
    m_decile: int = 6,
    delta: int | None = None,
    capacity: int | None = None,
) -> GeneratedInstance:
    """
    Generates k large items L_i in decile `m_decile` and their exact complements S_i = capacity - L_i.

    L_i = m_decile * capacity / 10 + i * delta, so L_i + S_j > capacity whenever j < i. The items
    come out as L_1..L_k then S_k..S_1: drawing from the end of each bucket, every large item
    first meets a small item it cannot take. The optimum pairs each L_i with its S_i.

    Args:
        k (int): Number of pairs, at least 1
        m_decile (int): Decile of the large items, 5..9
        delta (int | None): Spread between consecutive large items, defaults to capacity // (10 * (k + 1))
        capacity (int | None): Bin capacity, defaults to the packing settings

    Returns:
        GeneratedInstance: 2k items with declared optimum k
    """
    capacity = capacity or config.default_capacity
    if k < 1:
        raise ValueError(f"complementary family needs k >= 1, got {k}")
    if not 5 <= m_decile <= 9:
        raise ValueError(f"m_decile must lie in 5..9, got {m_decile}")
    delta = capacity // (NUM_RANGES * (k + 1)) if delta is None else delta
    if delta < 1:
        raise ValueError(f"delta must be at least 1, got {delta} (capacity {capacity} too small for k={k})")

    base = m_decile * capacity // NUM_RANGES
    large = [base + i * delta for i in range(1, k + 1)]
    small = [capacity - size for size in large]

    top = large[-1]
    if top >= capacity or range_index(large[0], capacity) != m_decile or range_index(top, capacity) != m_decile:
        raise ValueError(f"k={k}, delta={delta} push the large items out of decile {m_decile}")
    if range_index(small[0], capacity) != NUM_RANGES - 1 - m_decile or range_index(small[-1], capacity) != (
        NUM_RANGES - 1 - m_decile
    ):
        raise ValueError(f"k={k}, delta={delta} push the small items out of decile {NUM_RANGES - 1 - m_decile}")

    sizes = tuple(large + small[::-1])
    instance = Instance(capacity=capacity, sizes=sizes, name=f"complementary-k{k}-m{m_decile}")
    logger.debug(f"Generated complementary family k={k}, m={m_decile}, delta={delta}")
    return GeneratedInstance(instance=instance, family="complementary", optimum=k)


def gen_range_family(n: int, decile: int, seed: int = 0, capacity: int | None = None) -> GeneratedInstance:
    """
    Generates n sizes uniform over the half-open decile [decile/10, (decile+1)/10) of the capacity.
    """
    capacity = capacity or config.default_capacity
    if n < 1:
        raise ValueError(f"range family needs n >= 1, got {n}")
    if not 0 <= decile < NUM_RANGES:
        raise ValueError(f"decile must lie in 0..9, got {decile}")

    low = max(1, -(-decile * capacity // NUM_RANGES))
    high = -(-(decile + 1) * capacity // NUM_RANGES)
    if low >= high:
        raise ValueError(f"capacity {capacity} leaves no integer size in decile {decile}")

    rng = np.random.default_rng(seed)
    sizes = tuple(int(size) for size in rng.integers(low, high, size=n))
    instance = Instance(capacity=capacity, sizes=sizes, name=f"range-d{decile}-n{n}-s{seed}")
    return GeneratedInstance(instance=instance, family="range")


def gen_triplets(m: int, seed: int = 0, capacity: int | None = None) -> GeneratedInstance:
    """
    Generates m triples each summing exactly to the capacity, every size strictly between
    a quarter and a half of the capacity, shuffled.

    Args:
        m (int): Number of triples, at least 1
        seed (int): Seed of the draws and of the shuffle
        capacity (int | None): Bin capacity, defaults to the packing settings

    Returns:
        GeneratedInstance: 3m items with declared optimum m
    """
    capacity = capacity or config.default_capacity
    if m < 1:
        raise ValueError(f"triplets family needs m >= 1, got {m}")

    # a, b in (C/4, 3C/8) keeps c = C - a - b in (C/4, C/2)
    low = capacity // 4 + 1
    high = -(-3 * capacity // 8)
    if low >= high:
        raise ValueError(f"capacity {capacity} is too small for the triplets family")

    rng = np.random.default_rng(seed)
    pairs = rng.integers(low, high, size=(m, 2))
    sizes: list[int] = []
    for a, b in pairs:
        sizes.extend((int(a), int(b), capacity - int(a) - int(b)))

    shuffled = tuple(sizes[int(i)] for i in rng.permutation(len(sizes)))
    instance = Instance(capacity=capacity, sizes=shuffled, name=f"triplets-m{m}-s{seed}")
    return GeneratedInstance(instance=instance, family="triplets", optimum=m)


def gen_uniform(n: int, lo: int, hi: int, seed: int = 0, capacity: int | None = None) -> GeneratedInstance:
    """Generates n independent sizes uniform on [lo, hi]."""
    capacity = capacity or config.default_capacity
    if n < 0:
        raise ValueError(f"uniform family needs n >= 0, got {n}")
    if not 1 <= lo <= hi <= capacity:
        raise ValueError(f"uniform bounds need 1 <= lo <= hi <= capacity, got lo={lo}, hi={hi}, capacity={capacity}")

    rng = np.random.default_rng(seed)
    sizes = tuple(int(size) for size in rng.integers(lo, hi, size=n, endpoint=True))
    instance = Instance(capacity=capacity, sizes=sizes, name=f"uniform-n{n}-s{seed}")
    return GeneratedInstance(instance=instance, family="uniform")


def _require(value: int | None, name: str, family: Family) -> int:
    if value is None:
        raise ValueError(f"family {family!r} needs parameter {name}")
    return value


def generate(spec: FamilySpec) -> GeneratedInstance:
    """Runs the generator named by `spec.family` with the parameters of `spec`."""
    match spec.family:
        case "complementary":
            return gen_complementary_pair(
                _require(spec.k, "k", spec.family), spec.m_decile, spec.delta, spec.capacity
            )
        case "range":
            return gen_range_family(
                _require(spec.n, "n", spec.family),
                _require(spec.decile, "decile", spec.family),
                spec.seed,
                spec.capacity,
            )
        case "triplets":
            return gen_triplets(_require(spec.m, "m", spec.family), spec.seed, spec.capacity)
        case "uniform":
            lo = 1 if spec.lo is None else spec.lo
            hi = spec.capacity if spec.hi is None else spec.hi
            return gen_uniform(_require(spec.n, "n", spec.family), lo, hi, spec.seed, spec.capacity)
