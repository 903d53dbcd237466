import pytest

from packing.baselines import ALGORITHMS, bfd, ffd
from packing.core import Bin, Instance, validate_solution
from tests.conftest import InstanceFactory


def test_ffd_first_fit_rule() -> None:
    solution = ffd(Instance(capacity=100, sizes=(50, 40, 30, 20, 10)))

    assert solution.bins == (Bin(members=(0, 1, 4), load=100), Bin(members=(2, 3), load=50))
    assert solution.algorithm == "ffd"


def test_bfd_best_fit_rule() -> None:
    solution = bfd(Instance(capacity=100, sizes=(50, 40, 30, 20, 10)))

    assert solution.bin_count == 2
    assert solution.algorithm == "bfd"


@pytest.mark.parametrize(
    ("sizes", "expected_bins"),
    [((), 0), ((60, 60), 2), ((100, 100), 2), ((1,), 1)],
)
@pytest.mark.parametrize("algorithm", ["ffd", "bfd"])
def test_small_cases(algorithm: str, sizes: tuple[int, ...], expected_bins: int) -> None:
    assert ALGORITHMS[algorithm](Instance(capacity=100, sizes=sizes)).bin_count == expected_bins


def test_ffd_breaks_size_ties_by_id() -> None:
    solution = ffd(Instance(capacity=100, sizes=(30, 50, 30)))

    assert solution.bins == (Bin(members=(0, 1), load=80), Bin(members=(2,), load=30))


def test_bfd_breaks_load_ties_by_bin_index() -> None:
    solution = bfd(Instance(capacity=100, sizes=(60, 60, 30)))

    assert solution.bins == (Bin(members=(0, 2), load=90), Bin(members=(1,), load=60))


@pytest.mark.parametrize("algorithm", ["ffd", "bfd"])
def test_baselines_are_valid_and_deterministic(random_instance: InstanceFactory, algorithm: str) -> None:
    pack = ALGORITHMS[algorithm]
    for seed in range(200):
        instance = random_instance(seed, 50, 100)

        solution = pack(instance)

        assert validate_solution(instance, solution).ok
        assert pack(instance) == solution
