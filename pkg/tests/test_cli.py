import json
from pathlib import Path

import pytest

from harness import compare as compare_module
from harness.main import main
from packing.core import Bin, Instance, Solution
from packing.serialization import parse_instance, parse_solution, read_results


def _write(tmp_path: Path, name: str, text: str) -> Path:
    path = tmp_path / name
    path.write_text(text)
    return path


def test_pack_complement_pair(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(tmp_path, "pair.txt", "100\n2\n55\n45\n")

    code = main(["pack", str(path), "--algo", "ranger", "--strategy", "pop-last", "--format", "json"])

    assert code == 0
    solution = parse_solution(capsys.readouterr().out)
    assert solution.bin_count == 1
    assert solution.bins[0].members == (0, 1)


def test_pack_human_report(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(tmp_path, "pair.txt", "100\n2\n55\n45\n")

    assert main(["pack", str(path), "--algo", "ffd"]) == 0

    out = capsys.readouterr().out
    assert "bin 0: load 100 items [0, 1]" in out
    assert "bins: 1" in out


def test_pack_csv_rows(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(tmp_path, "three.txt", "100\n3\n60\n60\n40\n")

    assert main(["pack", str(path), "--algo", "bfd", "--format", "csv"]) == 0

    assert capsys.readouterr().out.splitlines() == ["bin,load,members", "0,100,0 2", "1,60,1"]


def test_pack_empty_instance(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(tmp_path, "empty.txt", "100\n0\n")

    assert main(["pack", str(path), "--format", "json"]) == 0
    assert parse_solution(capsys.readouterr().out).bin_count == 0


def test_pack_malformed_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(tmp_path, "bad.txt", "100\n2\n105\n45\n")

    assert main(["pack", str(path)]) == 2
    assert "line 3: size 105 exceeds capacity 100" in capsys.readouterr().err


def test_pack_missing_file(tmp_path: Path) -> None:
    assert main(["pack", str(tmp_path / "nope.txt")]) == 2


def test_invalid_packing_exits_3(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    path = _write(tmp_path, "pair.txt", "100\n2\n55\n45\n")

    def broken_pack(instance: Instance, strategy: object) -> Solution:
        return Solution(capacity=100, bins=(Bin(members=(0,), load=55),), algorithm="ranger")

    monkeypatch.setattr(compare_module, "pack", broken_pack)

    assert main(["pack", str(path), "--algo", "ranger"]) == 3


def test_compare_triplets(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["compare", "--family", "triplets", "--m", "3", "--algos", "ranger,ffd", "--format", "json"])

    assert code == 0
    records = read_results(capsys.readouterr().out)
    assert [record.algorithm for record in records] == ["ranger", "ffd"]
    for record in records:
        assert record.optimum == 3
        assert record.ratio is not None
        assert record.ratio <= 1.5


def test_compare_runs_ranger_once_per_seed(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(tmp_path, "mix.txt", "100\n6\n55\n45\n30\n30\n20\n20\n")

    code = main(["compare", str(path), "--seeds", "0,1,2", "--format", "json"])

    assert code == 0
    records = read_results(capsys.readouterr().out)
    assert [(record.algorithm, record.seed) for record in records] == [
        ("ranger", 0),
        ("ranger", 1),
        ("ranger", 2),
        ("ffd", None),
        ("bfd", None),
    ]
    assert all(record.optimum == 2 and record.instance == "mix" for record in records)


def test_compare_without_oracle_leaves_ratio_blank(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(tmp_path, "pair.txt", "100\n2\n55\n45\n")

    assert main(["compare", str(path), "--oracle-max-n", "0", "--format", "csv"]) == 0

    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "instance,algorithm,seed,bins,lower_bound,optimum,ratio,elapsed_ns,n"
    for line in lines[1:]:
        cells = line.split(",")
        assert cells[5] == ""
        assert cells[6] == ""


def test_compare_reads_declared_optimum(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "k4.txt"
    assert main(["gen", "--family", "complementary", "--k", "4", "--out", str(path)]) == 0
    capsys.readouterr()

    assert main(["compare", str(path), "--oracle-max-n", "0", "--algos", "ffd", "--format", "json"]) == 0

    (record,) = read_results(capsys.readouterr().out)
    assert record.optimum == 4
    assert record.ratio == record.bins / 4


def test_compare_unknown_algorithm() -> None:
    assert main(["compare", "--family", "triplets", "--m", "2", "--algos", "ranger,nfd"]) == 2


def test_compare_needs_an_instance() -> None:
    assert main(["compare"]) == 2


def test_gen_triplets_to_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "triplets.txt"

    assert main(["gen", "--family", "triplets", "--m", "2", "--out", str(path)]) == 0

    assert parse_instance(path.read_text()).n == 6
    assert "declared optimum: 2" in capsys.readouterr().out


def test_gen_complementary_to_stdout(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["gen", "--family", "complementary", "--k", "2"]) == 0

    out = capsys.readouterr().out
    assert parse_instance(out).n == 4
    assert "# optimum: 2" in out


def test_gen_is_deterministic(capsys: pytest.CaptureFixture[str]) -> None:
    arguments = ["gen", "--family", "uniform", "--n", "10", "--seed", "7"]

    assert main(arguments) == 0
    first = capsys.readouterr().out
    assert main(arguments) == 0
    assert capsys.readouterr().out == first


def test_gen_rejects_bad_parameters() -> None:
    assert main(["gen", "--family", "complementary", "--k", "0"]) == 2
    assert main(["gen", "--family", "triplets"]) == 2
    assert main(["gen", "--family", "nonsense"]) == 2


def _verify(tmp_path: Path, sizes: str, bins: list[dict[str, object]]) -> int:
    instance = _write(tmp_path, "instance.txt", sizes)
    solution = _write(tmp_path, "solution.json", json.dumps({"capacity": 100, "bins": bins, "algorithm": "manual"}))
    return main(["verify", str(instance), str(solution)])


def test_verify_valid_pair(tmp_path: Path) -> None:
    assert _verify(tmp_path, "100\n2\n55\n45\n", [{"members": [0, 1], "load": 100}]) == 0


def test_verify_overfull_bin(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert _verify(tmp_path, "100\n2\n55\n50\n", [{"members": [0, 1], "load": 105}]) == 1
    assert "overfull" in capsys.readouterr().out


def test_verify_missing_item(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert _verify(tmp_path, "100\n2\n55\n45\n", [{"members": [0], "load": 55}]) == 1
    assert "missing: item 1 is not packed" in capsys.readouterr().out


def test_verify_output_of_pack(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    instance = _write(tmp_path, "mix.txt", "100\n5\n55\n45\n30\n30\n20\n")
    assert main(["pack", str(instance), "--format", "json"]) == 0
    solution = _write(tmp_path, "solution.json", capsys.readouterr().out)

    assert main(["verify", str(instance), str(solution)]) == 0


def test_verify_unreadable_solution(tmp_path: Path) -> None:
    instance = _write(tmp_path, "instance.txt", "100\n1\n10\n")
    solution = _write(tmp_path, "solution.json", "{not json")

    assert main(["verify", str(instance), str(solution)]) == 2


def test_bench_rows(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["bench", "--sizes", "1000,2000", "--repeats", "1", "--format", "json"]) == 0

    rows = json.loads(capsys.readouterr().out)
    assert [row["n"] for row in rows] == [1000, 2000]
    assert rows[0]["growth"] is None
    assert rows[1]["growth"] is not None
    assert all(row["probes_within_bound"] for row in rows)


def test_bench_single_size_human(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["bench", "--sizes", "500", "--repeats", "2"]) == 0
    assert "ns_per_item" in capsys.readouterr().out


def test_verify_lists_empty_bin_and_negative_load(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    bins: list[dict[str, object]] = [{"members": [0, 1], "load": 100}, {"members": [], "load": -1}]

    assert _verify(tmp_path, "100\n2\n55\n45\n", bins) == 1

    out = capsys.readouterr().out
    assert "empty_bin" in out
    assert "load_mismatch" in out
