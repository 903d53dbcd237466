from fractions import Fraction

import pytest
from pydantic import ValidationError

from packing.core import Bin, Instance, Solution, range_index, validate_solution


@pytest.mark.parametrize(
    ("load", "capacity", "expected"),
    [
        (50, 100, 5),
        (5, 100, 0),
        (100, 100, 9),
        (9, 100, 0),
        (10, 100, 1),
        (49, 100, 4),
        (99, 100, 9),
        (1, 1, 9),
    ],
)
def test_range_index(load: int, capacity: int, expected: int) -> None:
    assert range_index(load, capacity) == expected


@pytest.mark.parametrize(("load", "capacity"), [(0, 100), (-3, 100), (5, 0)])
def test_range_index_rejects_non_positive_values(load: int, capacity: int) -> None:
    with pytest.raises(ValueError):
        range_index(load, capacity)


@pytest.mark.parametrize("capacity", [1, 7, 37, 100, 1_000])
def test_range_index_is_monotone_and_respects_decile_bounds(capacity: int) -> None:
    previous = 0
    for load in range(1, capacity + 1):
        bucket = range_index(load, capacity)
        assert bucket >= previous
        if bucket < 9:
            assert bucket * capacity <= 10 * load < (bucket + 1) * capacity
        previous = bucket


def test_range_index_is_scale_invariant() -> None:
    for load in range(1, 101):
        assert range_index(load, 100) == range_index(7 * load, 700)


def test_instance_rejects_sizes_outside_capacity() -> None:
    with pytest.raises(ValidationError):
        Instance(capacity=100, sizes=(55, 105))
    with pytest.raises(ValidationError):
        Instance(capacity=100, sizes=(0, 45))
    with pytest.raises(ValidationError):
        Instance(capacity=0, sizes=())


def test_instance_properties() -> None:
    instance = Instance(capacity=100, sizes=(50, 51, 60, 10))

    assert instance.n == 4
    assert instance.total_size == 171
    assert instance.large_count == 2
    assert instance.weight(0) == Fraction(1, 2)
    assert [item.size for item in instance.items()] == [50, 51, 60, 10]
    assert [item.id for item in instance.items()] == [0, 1, 2, 3]


def test_instance_scaled() -> None:
    instance = Instance(capacity=100, sizes=(55, 45), name="pair")
    scaled = instance.scaled(7)

    assert scaled.capacity == 700
    assert scaled.sizes == (385, 315)
    assert scaled.name == "pair"
    assert scaled.weight(0) == instance.weight(0)
    with pytest.raises(ValueError):
        instance.scaled(0)


def test_solution_statistics() -> None:
    solution = Solution(
        capacity=100,
        bins=(Bin(members=(0, 1), load=100), Bin(members=(2,), load=70)),
        algorithm="test",
    )

    assert solution.bin_count == 2
    assert solution.total_slack == 30
    assert solution.min_fill_fraction() == Fraction(7, 10)
    assert solution.min_fill == pytest.approx(0.7)
    assert solution.to_dict()["bin_count"] == 2


def test_empty_solution_statistics() -> None:
    solution = Solution(capacity=100, algorithm="test")

    assert solution.bin_count == 0
    assert solution.total_slack == 0
    assert solution.min_fill is None


def _solution(*bins: tuple[tuple[int, ...], int]) -> Solution:
    return Solution(capacity=100, bins=tuple(Bin(members=m, load=load) for m, load in bins), algorithm="test")


def test_validate_accepts_exact_partition() -> None:
    instance = Instance(capacity=100, sizes=(55, 45))

    report = validate_solution(instance, _solution(((0, 1), 100)))

    assert report.ok
    assert report.violations == ()


def test_validate_reports_overfull_bin() -> None:
    instance = Instance(capacity=100, sizes=(55, 50))

    report = validate_solution(instance, _solution(((0, 1), 105)))

    assert not report.ok
    assert [v.kind for v in report.violations] == ["overfull"]
    assert "105 > 100" in report.violations[0].detail


def test_validate_reports_missing_item() -> None:
    instance = Instance(capacity=100, sizes=(55, 45))

    report = validate_solution(instance, _solution(((0,), 55)))

    assert not report.ok
    assert [(v.kind, v.item_id) for v in report.violations] == [("missing", 1)]


def test_validate_reports_empty_bin_and_negative_load() -> None:
    instance = Instance(capacity=100, sizes=(55, 45))

    report = validate_solution(instance, _solution(((0, 1), 100), ((), 0), ((), -5)))

    assert not report.ok
    assert [(v.kind, v.bin_index) for v in report.violations] == [
        ("empty_bin", 1),
        ("empty_bin", 2),
        ("load_mismatch", 2),
    ]


def test_validate_reports_duplicate_unknown_and_load_mismatch() -> None:
    instance = Instance(capacity=100, sizes=(30, 20))

    report = validate_solution(instance, _solution(((0, 1), 50), ((1, 7), 20)))

    kinds = {v.kind for v in report.violations}
    assert kinds == {"duplicate", "unknown"}

    report = validate_solution(instance, _solution(((0, 1), 60)))
    assert [v.kind for v in report.violations] == ["load_mismatch"]
