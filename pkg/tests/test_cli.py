import argparse
import json
import pytest

from quadtitchmarsh.cli import (
    EXPSUM_COLUMNS,
    SUM_COLUMNS,
    expsum_row,
    main,
    parse_int,
    parse_seed
)
from quadtitchmarsh.exp_sums import ExpSumParams, bound_report, e_sum_direct


def run_json(capsys, *argv: str) -> tuple[int, dict]:
    code = main(["--format", "json", *argv])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("text,expected", [("1e8", 10**8), ("25E+2", 2500), ("12", 12), ("-3", -3)])
def test_parse_int(text, expected):
    assert parse_int(text) == expected


@pytest.mark.parametrize("text", ["1.5e3", "1e-3", "ten", ""])
def test_parse_int_rejects_inexact_values(text):
    with pytest.raises(argparse.ArgumentTypeError):
        parse_int(text)


def test_parse_seed_range():
    assert parse_seed("18446744073709551615") == 2**64 - 1
    with pytest.raises(argparse.ArgumentTypeError):
        parse_seed("-1")


def test_sum_json(capsys):
    code, document = run_json(capsys, "sum", "--n", "8", "--z", "1", "--p-limit", "1000")
    assert code == 0
    assert document["command"] == "sum"
    assert document["seed"] == 0
    assert (document["m1"], document["m2"], document["q"]) == (2, 2, 1)
    assert (document["pair_count"], document["sum_tau"]) == (1, 3)
    assert document["constant_p_limit"] == 1000
    assert document["within_envelope"] is True
    assert "ordered" in document["convention"]


def test_sum_flags_envelope_miss(capsys):
    code, document = run_json(capsys, "sum", "--n", "1e6")
    assert code == 0
    assert document["sum_tau"] == 253735
    assert document["within_envelope"] is False


def test_global_flags_after_subcommand(capsys):
    code = main(["decompose", "--n", "13", "--z", "3", "--format", "json", "--seed", "7"])
    document = json.loads(capsys.readouterr().out)
    assert code == 0
    assert document["s"] == 11
    assert document["seed"] == 7


def test_constant_json(capsys):
    code, document = run_json(capsys, "--seed", "7", "constant", "--p-limit", "3")
    assert code == 0
    assert document["value"] == pytest.approx(5 / 3)
    assert document["lower"] <= document["value"] <= document["upper"]
    assert document["seed"] == 7


def test_s_table_csv(capsys):
    assert main(["s-table", "--max", "9"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# seed=0 command=s-table"
    assert lines[1] == "d,s_brute,s_mult,phi,ratio_term"
    assert [line.split(",")[0] for line in lines[2:]] == ["1", "3", "5", "7", "9"]
    assert lines[2] == "1,1,1,1,1"
    assert lines[3] == "3,4,4,2,1"
    assert lines[4] == "5,0,0,4,0"
    assert lines[5].startswith("7,8,8,6,0.2222222222222222")


def test_s_table_single_row(capsys):
    assert main(["s-table", "--max", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[2:] == ["1,1,1,1,1"]


def test_s_table_skip_brute(capsys):
    assert main(["s-table", "--max", "20", "--skip-brute"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[2] == "1,,1,1,1"
    assert len(lines) == 2 + 10


def test_expsum_verify_empty_sweep(capsys):
    assert main(["expsum", "verify", "--samples", "0", "--d-max", "100"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# seed=0 command=expsum verify"
    assert lines[1].split(",")[:5] == ["e1", "e2", "h1", "h2", "d"]
    assert len(lines) == 2


def test_expsum_verify_is_reproducible(tmp_path):
    outputs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        argv = ["--seed", "11", "--out", str(path), "expsum", "verify", "--samples", "50",
                "--d-max", "200"]
        assert main(argv) == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0].startswith(b"# seed=11 command=expsum verify\n")


def test_expsum_salie_and_kloosterman(capsys):
    code, document = run_json(capsys, "expsum", "salie", "--samples", "50", "--d-max", "300")
    assert code == 0
    assert document["max_deviation"] <= 1e-6
    code, document = run_json(capsys, "expsum", "kloosterman", "--samples", "50", "--m-max", "300")
    assert code == 0
    assert document["failures"] == 0


def test_pairs_and_classic(capsys):
    code, document = run_json(capsys, "pairs", "--n", "1e6")
    assert code == 0
    assert document["passed"] is True
    code, document = run_json(capsys, "classic", "--x", "10")
    assert code == 0
    assert document["sum_tau"] == 10


def test_pairs_budget_failure_exits_with_one(capsys):
    assert main(["pairs", "--n", "1e4", "--k", "0"]) == 1


@pytest.mark.parametrize("argv", [
    ["sum", "--n", "7"],
    ["pairs", "--n", "100"],
    ["decompose", "--n", "100", "--z", "0"],
    ["s-table", "--max", "200000"],
    ["sum", "--n", "1.5e3"],
    [],
])
def test_usage_and_domain_errors_exit_with_two(argv):
    assert main(argv) == 2


def test_unwritable_output_exits_with_three(tmp_path):
    path = tmp_path / "missing" / "out.csv"
    assert main(["--out", str(path), "constant", "--p-limit", "3"]) == 3


def test_sum_csv_keeps_schema(capsys):
    assert main(["sum", "--n", "1000", "--p-limit", "1000"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == ",".join(SUM_COLUMNS)
    assert len(lines) == 3


def test_expsum_row_matches_columns():
    params = ExpSumParams(1, 1, 1, 0, 3)
    row = expsum_row(bound_report(params, e_sum_direct(params)))
    assert list(row) == EXPSUM_COLUMNS
    assert (row["d"], row["omega"]) == (3, 1)
    assert row["re"] == pytest.approx(-2)
