from loguru import logger

from packing.baselines import ALGORITHMS, bfd, ffd
from packing.core import Bin, Instance, Item, Solution, ValidationReport, Violation, range_index, validate_solution
from packing.errors import InstanceParseError, InvariantViolation, PackingError
from packing.generators import FamilySpec, GeneratedInstance, generate
from packing.oracle import NotSolved, OracleLimits, Solved, lower_bound, optimal_bins
from packing.ranger import PopFirst, PopLast, ProbeStrategy, SeededRandom, make_strategy, pack, pack_with_trace

# Library code stays quiet unless the application enables it
logger.disable("packing")

__all__ = [
    "ALGORITHMS",
    "Bin",
    "FamilySpec",
    "GeneratedInstance",
    "Instance",
    "InstanceParseError",
    "InvariantViolation",
    "Item",
    "NotSolved",
    "OracleLimits",
    "PackingError",
    "PopFirst",
    "PopLast",
    "ProbeStrategy",
    "SeededRandom",
    "Solution",
    "Solved",
    "ValidationReport",
    "Violation",
    "bfd",
    "ffd",
    "generate",
    "lower_bound",
    "make_strategy",
    "optimal_bins",
    "pack",
    "pack_with_trace",
    "range_index",
    "validate_solution",
]
