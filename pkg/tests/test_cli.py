"""The command-line surface: formats, flags, exit codes."""

import csv
import io
import json

import pytest

from fqtcount.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_landau_json_with_oracle(capsys):
    code, out, err = run(
        capsys, "count", "landau", "--q", "3", "--max-n", "5", "--oracle"
    )
    assert code == 0
    data = json.loads(out)
    assert data["values"] == {
        "0": "1", "1": "2", "2": "5", "3": "12", "4": "32", "5": "84",
    }
    assert data["oracle"]["all_match"] is True
    assert data["family"] == "landau-A2TB2"


def test_count_csv_columns(capsys):
    code, out, err = run(
        capsys, "count", "s2", "--q", "3", "--max-half-degree", "1",
        "--format", "csv", "--oracle",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["index", "degree", "count", "method", "oracle_match"]
    assert rows[1] == ["0", "0", "1", "generating-function", "yes"]
    assert rows[2] == ["1", "2", "3", "generating-function", "yes"]


def test_count_even_q_landau_exits_2(capsys):
    code, out, err = run(capsys, "count", "landau", "--q", "4", "--max-n", "3")
    assert code == 2
    assert "odd q" in err


def test_count_missing_size_flag_exits_2(capsys):
    code, out, err = run(capsys, "count", "landau", "--q", "3")
    assert code == 2


def test_count_wrong_size_flag_for_family_exits_2(capsys):
    code, out, err = run(
        capsys, "count", "landau", "--q", "3", "--max-half-degree", "2"
    )
    assert code == 2
    code, out, err = run(
        capsys, "count", "s1", "--q", "3", "--max-n", "2"
    )
    assert code == 2


def test_count_divisors_roundtrip(capsys, tmp_path):
    lfile = tmp_path / "l.json"
    lfile.write_text('{"q": 3, "coefficients": [1]}')
    code, out, err = run(
        capsys, "count", "divisors", "--l-poly", str(lfile), "--r", "2",
        "--max-n", "3",
    )
    assert code == 0
    data = json.loads(out)
    assert data["values"] == {"0": "1", "1": "3", "2": "24", "3": "180"}
    assert data["params"]["ell"] == "unbounded"


def test_count_divisors_bad_lpoly_exits_2(capsys, tmp_path):
    lfile = tmp_path / "bad.json"
    lfile.write_text('{"q": 3, "coefficients": [1, 5, 1]}')
    code, out, err = run(
        capsys, "count", "divisors", "--l-poly", str(lfile), "--r", "2",
        "--max-n", "3",
    )
    assert code == 2
    assert "invalid" in err


def test_count_oracle_rejected_for_divisors(capsys, tmp_path):
    lfile = tmp_path / "l.json"
    lfile.write_text('{"q": 3, "coefficients": [1]}')
    code, out, err = run(
        capsys, "count", "divisors", "--l-poly", str(lfile), "--r", "2",
        "--max-n", "3", "--oracle",
    )
    assert code == 2


def test_count_cap_skips_expensive_rows(capsys):
    code, out, err = run(
        capsys, "count", "landau", "--q", "3", "--max-n", "5", "--oracle",
        "--cap", "10", "--format", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    marks = [row[4] for row in rows[1:]]
    assert marks[:3] == ["yes", "yes", "yes"]
    assert marks[3:] == ["skipped", "skipped", "skipped"]


def test_constants_kq(capsys):
    code, out, err = run(
        capsys, "constants", "kq", "--q", "3", "--digits", "15"
    )
    assert code == 0
    data = json.loads(out)
    assert data["name"] == "K_q"
    assert len(data["methods"]) >= 2
    assert data["consensus"].startswith("1.32027078722979")


def test_constants_cam_needs_m_and_a(capsys):
    code, out, err = run(capsys, "constants", "cam", "--q", "3")
    assert code == 2
    code, out, err = run(
        capsys, "constants", "cam", "--q", "3", "--m", "T", "--a", "1"
    )
    assert code == 0
    assert json.loads(out)["consensus"].startswith("0.7574203789")


def test_constants_csv(capsys):
    code, out, err = run(
        capsys, "constants", "cq", "--q", "3", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["tag", "value", "tail_bound"]
    assert rows[-1][0] == "consensus"


def test_estimate_landau_in_range(capsys):
    code, out, err = run(
        capsys, "estimate", "landau", "--q", "3", "--n", "200"
    )
    assert code == 0
    data = json.loads(out)
    assert data["in_range"] is True
    assert data["certified"] is True
    assert data["threshold"] == 149
    assert data["main_term"].startswith("1.3")
    assert data["exact"]["within_bound"] is True


def test_estimate_landau_out_of_range(capsys):
    code, out, err = run(capsys, "estimate", "landau", "--q", "3", "--n", "2")
    assert code == 0
    data = json.loads(out)
    assert data["in_range"] is False
    assert "simplified_error_bound" not in data


def test_estimate_arith_hypothesis_gate_exits_2(capsys):
    code, out, err = run(
        capsys, "estimate", "arith", "--q", "2", "--m", "T", "--a", "1",
        "--n", "50",
    )
    assert code == 2
    assert "c1" in err


def test_estimate_requires_positive_n(capsys):
    code, out, err = run(capsys, "estimate", "landau", "--q", "3", "--n", "0")
    assert code == 2


def test_verify_single_suite(capsys):
    code, out, err = run(capsys, "verify", "--suite", "identities", "--seed", "7")
    assert code == 0
    assert out.startswith("suite identities seed 7")
    assert "passed 8/8" in out


def test_verify_json_format(capsys):
    code, out, err = run(
        capsys, "verify", "--suite", "identities", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data[0]["suite"] == "identities"
    assert data[0]["passed"] == data[0]["total"]


def test_verify_deterministic_output(capsys):
    _, out1, _ = run(capsys, "verify", "--suite", "bounds", "--seed", "3")
    _, out2, _ = run(capsys, "verify", "--suite", "bounds", "--seed", "3")
    assert out1 == out2


def test_output_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "table.json"
    code, out, err = run(
        capsys, "count", "landau", "--q", "3", "--max-n", "2",
        "--output", str(target),
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["values"]["2"] == "5"


def test_custom_field_flags(capsys):
    code, out, err = run(
        capsys, "count", "s1", "--p", "3", "--k", "2", "--max-half-degree", "1"
    )
    assert code == 0
    assert json.loads(out)["params"]["q"] == 9
    code, out, err = run(
        capsys, "count", "s1", "--q", "5", "--p", "3", "--k", "2",
        "--max-half-degree", "1",
    )
    assert code == 2


def test_unknown_family_exits_2(capsys):
    code, out, err = run(capsys, "count", "mystery", "--q", "3", "--max-n", "2")
    assert code == 2


def test_no_command_exits_2(capsys):
    assert main([]) == 2
