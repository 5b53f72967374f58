import csv
import math
import re
import shlex
from pathlib import Path

import pytest

from bnumbers.cli import main

ROOT = Path(__file__).parents[1]
GOLDEN = Path(__file__).parent / "golden" / "cli"


def readme_examples():
    """(argv, expected stdout) for every ``$ bnum`` line in the README console blocks."""
    text = (ROOT / "README.md").read_text(encoding="utf-8")
    examples = []
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        for chunk in re.split(r"^\$ ", block, flags=re.M)[1:]:
            command, _, output = chunk.partition("\n")
            argv = shlex.split(command)
            assert argv[0] == "bnum"
            examples.append((argv[1:], output))
    return examples


EXAMPLES = readme_examples()


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def repo_cwd(monkeypatch):
    monkeypatch.chdir(ROOT)


def test_readme_has_examples():
    assert len(EXAMPLES) >= 15


@pytest.mark.parametrize("argv, expected", EXAMPLES, ids=[" ".join(a) for a, _ in EXAMPLES])
def test_readme_example(argv, expected, capsys):
    code, out, _ = run_cli(argv, capsys)
    assert code == 0
    assert out == expected
    assert run_cli(argv, capsys)[1] == out


def entropy(p):
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_golden_theorem4_rows_follow_closed_form():
    # 180-bit M1 + 16-bit length field + binary input; 32-bit header when padded
    for row in read_rows(GOLDEN / "theorem4.csv"):
        b = int(row["parameter"])
        base = 196 + len(format(b, "b"))
        assert int(row["baseline_length"]) == base
        assert int(row["padding"]) == max(0, 2**b - base)
        assert float(row["epsilon"]) == pytest.approx(entropy(1 / (2**b + 1)), rel=1e-8)
        total = base + 1 if 2**b <= base else 32 + 2**b + 1
        assert float(row["achieved"]) == pytest.approx(entropy(1 / total), rel=1e-8)


def test_golden_theorem3_rows_follow_closed_form():
    length = read_rows(GOLDEN / "theorem3_length.csv")
    efficient = read_rows(GOLDEN / "theorem3_efficient.csv")
    assert [int(r["parameter"]) for r in length] == list(range(2, 65))
    for lrow, erow in zip(length, efficient):
        n = int(lrow["parameter"])
        bl = len(format(n, "b"))
        assert int(lrow["padding"]) == n - bl
        assert int(erow["padding"]) == 0
        assert float(lrow["achieved"]) == pytest.approx(entropy(1 / (32 + n + 1)), rel=1e-8)
        assert float(erow["achieved"]) == pytest.approx(entropy(1 / (32 + bl + 1)), rel=1e-8)


def test_experiment_files_match_golden(tmp_path, capsys):
    out = tmp_path / "csv"
    assert run_cli(["experiment", "--theorem", "4", "--max-b", "12", "--out-dir", str(out)], capsys)[0] == 0
    assert run_cli(["experiment", "--theorem", "3", "--max-n", "64", "--out-dir", str(out)], capsys)[0] == 0
    for name in ("theorem4.csv", "theorem3_length.csv", "theorem3_efficient.csv"):
        assert (out / name).read_bytes() == (GOLDEN / name).read_bytes()


def test_experiment_out_file_and_summary(tmp_path, capsys):
    target = tmp_path / "t3.csv"
    code, out, err = run_cli(
        ["experiment", "--theorem", "3", "--max-n", "64", "--case", "efficient", "--out", str(target)], capsys
    )
    assert code == 0 and err == ""
    assert out == "efficient: growth=Polynomial ratio→1\nlength: growth=Exponential ratio→2.07\n"
    assert target.read_bytes() == (GOLDEN / "theorem3_efficient.csv").read_bytes()


def test_experiment_stdout_moves_summary_to_stderr(capsys):
    code, out, err = run_cli(["experiment", "--theorem", "4", "--max-b", "12", "--out", "-"], capsys)
    assert code == 0
    assert out == (GOLDEN / "theorem4.csv").read_text(encoding="utf-8")
    assert err == "growth=Exponential ratio→2\n"


def test_reduce_program_fill(capsys):
    argv = ["reduce", "--machine", "machines/m1.tm", "--input", "5", "--epsilon", "I(1/1025)", "--fill", "program"]
    code, out, _ = run_cli(argv, capsys)
    assert code == 0
    assert out.splitlines()[-1] == "output=1 verdict=Accept"


def test_worst_case_parallel_matches(capsys):
    seq = run_cli(["worst-case", "--machine", "machines/m1.tm", "--n", "6"], capsys)
    par = run_cli(["worst-case", "--machine", "machines/m1.tm", "--n", "6", "--parallel"], capsys)
    assert seq == par == (0, "n=6 t_max=8 witness=000000\n", "")


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--b", "0"],
        ["decode", "--bits", "1", "--scheme", "binary"],
        ["decode", "--bits", "10a|1"],
        ["entropy", "--p", "1.5"],
        ["invert", "--epsilon", "2"],
        ["reduce", "--bits", "101|1", "--epsilon", "0"],
        ["reduce", "--epsilon", "0.5"],
        ["simulate", "--machine", "does/not/exist.tm"],
        ["worst-case", "--machine", "machines/m1.tm", "--n", "17"],
        ["experiment", "--theorem", "3", "--max-n", "1"],
        ["experiment", "--theorem", "3"],
        ["experiment", "--theorem", "4", "--max-b", "63"],
        ["vonneumann", "--n", "17"],
    ],
)
def test_domain_errors_exit_1(argv, capsys):
    code, out, err = run_cli(argv, capsys)
    assert code == 1
    assert out == ""
    assert err.startswith("error: ")


def test_bad_machine_file_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.tm"
    bad.write_text("states: a r\nstart: a\naccept: a\nreject: r\na 0 -> a 0\n")
    code, _, err = run_cli(["simulate", "--machine", str(bad)], capsys)
    assert code == 1
    assert "line 5" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["encode"],
        ["encode", "--value", "-1"],
        ["encode", "--value", "x"],
        ["encode", "--value", "1", "--scheme", "unary"],
        ["bounds"],
        ["experiment", "--theorem", "5"],
        ["worst-case", "--machine", "machines/m1.tm"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, out, _ = run_cli(argv, capsys)
    assert code == 2
    assert out == ""


def test_entropy_accepts_fractions_and_targets(capsys):
    assert run_cli(["entropy", "--p", "0.5"], capsys)[1] == "1\n"
    assert run_cli(["invert", "--epsilon", "I(1/3)"], capsys)[1] == "0.333333333\n"
