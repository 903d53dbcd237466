"""
Text formats: instance files, solution JSON and comparison results (CSV or JSON).

Instance text, one value per line:

    # comment lines and blank lines are ignored
    100        <- capacity, or the token `unit` for decimal weights in (0, 1]
    2          <- number of items
    55         <- one size per line
    45
"""

import re
from collections.abc import Iterable, Iterator, Sequence
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path
from typing import Literal

import pandas as pd
from pydantic import BaseModel, ConfigDict, TypeAdapter, model_validator
from pydantic_core import from_json

from packing.config import config
from packing.core import Bin, Instance, Solution
from packing.errors import InstanceParseError

UNIT_TOKEN = "unit"
_INTEGER = re.compile(r"[0-9]+")

ResultFormat = Literal["csv", "json"]


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _declared(text: str, key: str) -> str | None:
    """Value of the first `# key: value` comment line, if any."""
    pattern = re.compile(rf"#\s*{key}:\s*(\S.*)")
    for raw in text.splitlines():
        match = pattern.fullmatch(raw.strip())
        if match:
            return match.group(1).strip()
    return None


def _parse_integer(number: int, token: str, what: str) -> int:
    if not _INTEGER.fullmatch(token):
        raise InstanceParseError(number, f"{what} must be a non-negative integer, got {token!r}")
    return int(token)


def _decimal_places(weight: Decimal) -> int:
    """Digits after the point once trailing zeros are dropped, read without building the exact value."""
    _, digits, exponent = weight.as_tuple()
    text = "".join(map(str, digits))
    return -int(exponent) - (len(text) - len(text.rstrip("0")))


def _parse_unit_size(number: int, token: str, unit_capacity: int) -> int:
    try:
        weight = Decimal(token)
    except InvalidOperation:
        raise InstanceParseError(number, f"weight must be a decimal number, got {token!r}") from None
    if not weight.is_finite() or not 0 < weight <= 1:
        raise InstanceParseError(number, f"weight {token} is outside (0, 1]")

    # p places need a denominator of at least 2**p
    if _decimal_places(weight) > unit_capacity.bit_length():
        raise InstanceParseError(number, f"weight {token} has more precision than capacity {unit_capacity} can hold")
    scaled = Fraction(weight) * unit_capacity
    if scaled.denominator != 1:
        raise InstanceParseError(number, f"weight {token} has more precision than capacity {unit_capacity} can hold")
    return int(scaled)


def parse_instance(text: str, name: str | None = None, unit_capacity: int | None = None) -> Instance:
    """
    Parses instance text into an Instance.

    Args:
        text (str): The instance text
        name (str | None): Label used when the text carries no `# name:` comment
        unit_capacity (int | None): Capacity of the `unit` form, defaults to the packing settings

    Returns:
        Instance: the parsed instance

    Raises:
        InstanceParseError: with the 1-based line number of the first problem found
    """
    unit_capacity = unit_capacity or config.unit_capacity
    lines = _content_lines(text)
    end_line = len(text.splitlines()) + 1

    # Step 1. Capacity
    first = next(lines, None)
    if first is None:
        raise InstanceParseError(end_line, "missing capacity")
    number, token = first
    unit = token.lower() == UNIT_TOKEN
    if unit:
        capacity = unit_capacity
    else:
        capacity = _parse_integer(number, token, "capacity")
        if capacity < 1:
            raise InstanceParseError(number, "capacity must be at least 1")

    # Step 2. Item count
    second = next(lines, None)
    if second is None:
        raise InstanceParseError(end_line, "missing item count")
    number, token = second
    count = _parse_integer(number, token, "item count")

    # Step 3. Sizes
    sizes: list[int] = []
    for _ in range(count):
        entry = next(lines, None)
        if entry is None:
            raise InstanceParseError(end_line, f"expected {count} sizes, found {len(sizes)}")
        number, token = entry
        if unit:
            size = _parse_unit_size(number, token, unit_capacity)
        else:
            size = _parse_integer(number, token, "size")
            if size < 1:
                raise InstanceParseError(number, "size must be at least 1")
            if size > capacity:
                raise InstanceParseError(number, f"size {size} exceeds capacity {capacity}")
        sizes.append(size)

    trailing = next(lines, None)
    if trailing is not None:
        raise InstanceParseError(trailing[0], f"unexpected content after {count} sizes: {trailing[1]!r}")

    return Instance(capacity=capacity, sizes=tuple(sizes), name=_declared(text, "name") or name)


def serialize_instance(instance: Instance, comments: Iterable[str] = ()) -> str:
    """
    Writes an instance as instance text, each comment on its own `#` line before the data.

    A named instance starts with a `# name:` line, so parsing the text gives the instance back.
    """
    lines = [f"# name: {instance.name}"] if instance.name else []
    lines.extend(f"# {comment}" for comment in comments)
    lines.append(str(instance.capacity))
    lines.append(str(instance.n))
    lines.extend(str(size) for size in instance.sizes)
    return "\n".join(lines) + "\n"


def load_instance(path: Path) -> Instance:
    """Reads an instance file, naming the instance after the file stem unless the text names it."""
    return parse_instance(path.read_text(encoding="utf-8"), name=path.stem)


def dump_solution(solution: Solution) -> str:
    return solution.model_dump_json(indent=2)


_BINS = TypeAdapter(tuple[Bin, ...])


def parse_solution(text: str, capacity: int | None = None) -> Solution:
    """
    Reads a solution written by `dump_solution`, or a bare JSON array of bins.

    A bare array carries no capacity, so `capacity` must then be given (usually the
    capacity of the instance being verified).
    """
    data = from_json(text)
    if isinstance(data, list):
        if capacity is None:
            raise ValueError("a bare list of bins needs the instance capacity")
        return Solution(capacity=capacity, bins=_BINS.validate_python(data), algorithm="external")
    return Solution.model_validate(data)


class ResultRecord(BaseModel):
    """
    One row of a comparison table.

    Attributes:
        instance (str): Instance name
        algorithm (str): Algorithm that produced the bins
        seed (int | None): Probe seed, None for deterministic algorithms
        bins (int): Number of bins used
        lower_bound (int): Cheap lower bound on the optimum
        optimum (int | None): Oracle optimum, or the generator's declared optimum, when known
        ratio (float | None): bins / optimum, present only with an optimum
        elapsed_ns (int): Wall time of the packing run
        n (int): Number of items
    """

    model_config = ConfigDict(frozen=True)

    instance: str
    algorithm: str
    seed: int | None = None
    bins: int
    lower_bound: int
    optimum: int | None = None
    ratio: float | None = None
    elapsed_ns: int
    n: int

    @model_validator(mode="after")
    def _ratio_needs_optimum(self) -> "ResultRecord":
        if self.ratio is not None and not self.optimum:
            raise ValueError("ratio is only defined against a known positive optimum")
        return self


RESULT_COLUMNS: tuple[str, ...] = tuple(ResultRecord.model_fields)

_RECORDS = TypeAdapter(list[ResultRecord])


def write_results(records: Sequence[ResultRecord], fmt: ResultFormat = "csv") -> str:
    """
    Renders result records with a stable column order.

    Args:
        records (Sequence[ResultRecord]): Rows in output order
        fmt (ResultFormat): "csv" (header plus one row per record, blank cells for absent values)
            or "json" (array of flat objects)

    Returns:
        str: the rendered table
    """
    if fmt == "json":
        return _RECORDS.dump_json(list(records), indent=2).decode()

    rows = [record.model_dump() for record in records]
    frame = pd.DataFrame(rows, columns=list(RESULT_COLUMNS), dtype=object)
    csv: str = frame.to_csv(index=False, lineterminator="\n")
    return csv


def read_results(text: str) -> list[ResultRecord]:
    """Parses a JSON array written by `write_results(..., "json")`."""
    return _RECORDS.validate_json(text)


def declared_optimum(text: str) -> int | None:
    """Returns the optimum announced by a `# optimum: k` comment line, if the text has one."""
    value = _declared(text, "optimum")
    return int(value) if value is not None and _INTEGER.fullmatch(value) else None
