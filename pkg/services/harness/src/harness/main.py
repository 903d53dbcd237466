"""
Command-line front end of the bin packing toolkit.

    binpack pack instance.txt --algo ranger --strategy pop-last
    binpack compare --family triplets --m 3 --algos ranger,ffd
    binpack gen --family complementary --k 4 --out k4.txt
    binpack bench --sizes 100000,200000,400000 --repeats 5
    binpack verify instance.txt solution.json

Reports go to standard output, logs to standard error. Exit codes: 0 success, 1 verification
failed, 2 usage, parse or parameter error, 3 a produced solution failed validation.
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

import pandas as pd
from loguru import logger

from harness.bench import bench, bench_table
from harness.compare import ALGORITHM_NAMES, ComparisonCase, compare, run_algorithm
from harness.config import config
from packing.core import Instance, Solution, validate_solution
from packing.errors import InstanceParseError, InvariantViolation
from packing.generators import FAMILIES, FamilySpec, GeneratedInstance, generate
from packing.ranger import STRATEGY_NAMES
from packing.serialization import (
    declared_optimum,
    dump_solution,
    load_instance,
    parse_instance,
    parse_solution,
    serialize_instance,
    write_results,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3

_FAMILY_FIELDS = ("k", "m_decile", "delta", "n", "decile", "m", "lo", "hi", "seed", "capacity")


def _int_list(text: str) -> list[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None


def _algorithm_list(text: str) -> list[str]:
    names = [token.strip() for token in text.split(",") if token.strip()]
    unknown = [name for name in names if name not in ALGORITHM_NAMES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown algorithm(s) {', '.join(unknown) or '(none given)'}, choose from {', '.join(ALGORITHM_NAMES)}"
        )
    return names


def _add_family_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("family parameters")
    group.add_argument("--k", type=int, help="Number of complementary pairs")
    group.add_argument("--m-decile", type=int, help="Decile of the large complementary items (5..9)")
    group.add_argument("--delta", type=int, help="Spread between consecutive large complementary items")
    group.add_argument("--n", type=int, help="Number of items (range, uniform)")
    group.add_argument("--decile", type=int, help="Decile of the range family (0..9)")
    group.add_argument("--m", type=int, help="Number of triples")
    group.add_argument("--lo", type=int, help="Smallest uniform size")
    group.add_argument("--hi", type=int, help="Largest uniform size")
    group.add_argument("--seed", type=int, help="Generator seed")
    group.add_argument("--capacity", type=int, help="Bin capacity")


def _family_spec(args: argparse.Namespace) -> FamilySpec:
    parameters = {name: getattr(args, name) for name in _FAMILY_FIELDS if getattr(args, name, None) is not None}
    return FamilySpec(family=args.family, **parameters)


def _add_strategy_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--strategy", choices=STRATEGY_NAMES, default=config.default_strategy, help="Probe strategy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binpack", description="Bin packing with ranged complementary matching")
    parser.add_argument("--log-level", default=config.log_level, help="Log level of the messages on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    pack_parser = commands.add_parser("pack", help="Pack one instance file")
    pack_parser.add_argument("input", type=Path, help="Instance file")
    pack_parser.add_argument("--algo", choices=ALGORITHM_NAMES, default=config.default_algorithm)
    _add_strategy_arguments(pack_parser)
    pack_parser.add_argument("--seed", type=int, default=config.default_seed, help="Seed of the random strategy")
    pack_parser.add_argument("--format", choices=("human", "json", "csv"), default="human")
    pack_parser.set_defaults(handler=cmd_pack)

    compare_parser = commands.add_parser("compare", help="Compare algorithms against the best known optimum")
    compare_parser.add_argument("inputs", nargs="*", type=Path, help="Instance files")
    compare_parser.add_argument("--family", choices=FAMILIES, help="Generate the instance instead of reading it")
    compare_parser.add_argument("--algos", type=_algorithm_list, default=list(ALGORITHM_NAMES))
    compare_parser.add_argument("--seeds", type=_int_list, default=[config.default_seed], help="Ranger seeds, e.g. 0,1,2")
    _add_strategy_arguments(compare_parser)
    compare_parser.add_argument("--oracle-max-n", type=int, default=config.oracle_max_n)
    compare_parser.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_family_arguments(compare_parser)
    compare_parser.set_defaults(handler=cmd_compare)

    gen_parser = commands.add_parser("gen", help="Generate an instance file")
    gen_parser.add_argument("--family", choices=FAMILIES, required=True)
    gen_parser.add_argument("--out", type=Path, help="Output file (standard output when omitted)")
    _add_family_arguments(gen_parser)
    gen_parser.set_defaults(handler=cmd_gen)

    bench_parser = commands.add_parser("bench", help="Time the ranger on growing uniform instances")
    bench_parser.add_argument("--family", choices=("uniform",), default="uniform")
    bench_parser.add_argument("--sizes", type=_int_list, default=list(config.bench_sizes))
    bench_parser.add_argument("--repeats", type=int, default=config.bench_repeats)
    _add_strategy_arguments(bench_parser)
    bench_parser.add_argument("--seed", type=int, default=config.default_seed)
    bench_parser.add_argument("--format", choices=("human", "json", "csv"), default="human")
    bench_parser.set_defaults(handler=cmd_bench)

    verify_parser = commands.add_parser("verify", help="Check a solution against its instance")
    verify_parser.add_argument("instance", type=Path, help="Instance file")
    verify_parser.add_argument("solution", type=Path, help="Solution JSON (as written by pack --format json)")
    verify_parser.add_argument("--format", choices=("human", "json"), default="human")
    verify_parser.set_defaults(handler=cmd_verify)

    return parser


def format_solution(instance: Instance, solution: Solution, fmt: str) -> str:
    """Renders a solution as a human readable report, JSON or CSV (one row per bin)."""
    if fmt == "json":
        return dump_solution(solution)

    if fmt == "csv":
        frame = pd.DataFrame(
            [
                {"bin": index, "load": packed.load, "members": " ".join(str(i) for i in packed.members)}
                for index, packed in enumerate(solution.bins)
            ],
            columns=["bin", "load", "members"],
        )
        csv: str = frame.to_csv(index=False, lineterminator="\n")
        return csv

    strategy = f" (strategy {solution.strategy}, seed {solution.seed})" if solution.strategy else ""
    lines = [
        f"instance: {instance.name} ({instance.n} items, capacity {instance.capacity})",
        f"algorithm: {solution.algorithm}{strategy}",
    ]
    lines.extend(
        f"bin {index}: load {packed.load} items {list(packed.members)}" for index, packed in enumerate(solution.bins)
    )
    min_fill = "-" if solution.min_fill is None else f"{solution.min_fill:.4f}"
    lines.append(f"bins: {solution.bin_count}  total slack: {solution.total_slack}  min fill: {min_fill}")
    return "\n".join(lines) + "\n"


def cmd_pack(args: argparse.Namespace) -> int:
    instance = load_instance(args.input)
    solution, elapsed = run_algorithm(instance, args.algo, args.strategy, args.seed)
    logger.info(f"{args.algo} packed {instance.name} (n={instance.n}) into {solution.bin_count} bins in {elapsed} ns")
    sys.stdout.write(format_solution(instance, solution, args.format))
    return EXIT_OK


def _comparison_cases(args: argparse.Namespace) -> list[ComparisonCase]:
    cases = []
    for path in args.inputs:
        text = path.read_text(encoding="utf-8")
        instance = parse_instance(text, name=path.stem)
        cases.append(ComparisonCase(instance=instance, optimum=declared_optimum(text)))
    if args.family:
        generated = generate(_family_spec(args))
        cases.append(ComparisonCase(instance=generated.instance, optimum=generated.optimum))
    if not cases:
        raise ValueError("compare needs instance files or --family")
    return cases


def cmd_compare(args: argparse.Namespace) -> int:
    records = compare(
        _comparison_cases(args),
        algorithms=args.algos,
        seeds=args.seeds,
        strategy=args.strategy,
        oracle_max_n=args.oracle_max_n,
    )
    sys.stdout.write(write_results(records, args.format))
    return EXIT_OK


def _instance_comments(generated: GeneratedInstance) -> list[str]:
    comments = [f"family: {generated.family}"]
    if generated.optimum is not None:
        comments.append(f"optimum: {generated.optimum}")
    return comments


def cmd_gen(args: argparse.Namespace) -> int:
    generated = generate(_family_spec(args))
    text = serialize_instance(generated.instance, _instance_comments(generated))
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK

    args.out.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {generated.instance.n} items to {args.out}")
    if generated.optimum is not None:
        print(f"declared optimum: {generated.optimum}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    rows = bench(args.sizes, args.repeats, strategy=args.strategy, seed=args.seed)
    table = bench_table(rows)
    if args.format == "csv":
        sys.stdout.write(table.to_csv(index=False, lineterminator="\n"))
    elif args.format == "json":
        sys.stdout.write(table.to_json(orient="records", indent=2) + "\n")
    else:
        sys.stdout.write(table.to_string(index=False) + "\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    solution = parse_solution(args.solution.read_text(encoding="utf-8"), capacity=instance.capacity)
    report = validate_solution(instance, solution)

    if args.format == "json":
        sys.stdout.write(report.model_dump_json(indent=2) + "\n")
    elif report.ok:
        print(f"ok: {solution.bin_count} bins pack all {instance.n} items")
    else:
        for violation in report.violations:
            print(f"{violation.kind}: {violation.detail}")
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def setup_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level.upper())
    logger.enable("packing")


def main(argv: Sequence[str] | None = None) -> int:
    """
    Parses the command line, runs the command and maps failures to exit codes.

    Args:
        argv (Sequence[str] | None): Arguments without the program name, defaults to sys.argv[1:]

    Returns:
        int: the process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else EXIT_USAGE

    setup_logging(args.log_level)
    try:
        code: int = args.handler(args)
        return code
    except InstanceParseError as error:
        logger.error(f"{getattr(args, 'input', None) or getattr(args, 'instance', '')}: {error}")
        return EXIT_USAGE
    except InvariantViolation as error:
        logger.error(f"Internal invariant violated: {error}")
        return EXIT_INVARIANT
    except (ValueError, OSError) as error:
        logger.error(str(error))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
