import json
import subprocess
import sys

import pytest

from cftorus.cli import main, parse_holonomy, parse_spin


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_hf_exact_brane_point(capsys):
    code, out, _ = run_cli(capsys, ["hf", "--n", "2", "--spin", "0",
                                    "--holonomy", "1/3,1/3"])
    assert code == 0
    record = json.loads(out)
    assert record["nonvanishing"] is True
    assert record["ranks_by_lambda_degree"] == [1, 2, 1]
    assert record["backend"] == "exact"


def test_hf_twisted_spin_vanishes(capsys):
    code, out, _ = run_cli(capsys, ["hf", "--n", "2", "--spin", "{1}"])
    assert code == 0
    assert json.loads(out)["nonvanishing"] is False


def test_hf_n1_twisted_spin_survives(capsys):
    code, out, _ = run_cli(capsys, ["hf", "--n", "1", "--spin", "{1}"])
    assert code == 0
    assert json.loads(out)["nonvanishing"] is True


def test_hf_sign_vector_spin(capsys):
    # leading-dash values need the = form so argparse keeps them as values
    code, out, _ = run_cli(capsys, ["hf", "--n", "2", "--spin=-1,-1,1"])
    assert code == 0
    assert json.loads(out)["spin"] == [-1, -1, 1]


def test_hf_parse_error_exits_2(capsys):
    code, _, err = run_cli(capsys, ["hf", "--n", "2", "--holonomy", "1/3"])
    assert code == 2
    assert "error" in err


def test_usage_error_exits_2(capsys):
    assert main(["hf"]) == 2  # missing --n
    capsys.readouterr()


def test_hf_approx_holonomy(capsys):
    code, out, _ = run_cli(capsys, ["hf", "--n", "2",
                                    "--holonomy", "0.6,0.8;1.0,0.0"])
    assert code == 0
    record = json.loads(out)
    assert record["backend"] == "approx"
    assert record["nonvanishing"] is False


def test_mixed_holonomy_promoted_with_warning(capsys):
    code, out, err = run_cli(capsys, ["hf", "--n", "2",
                                      "--holonomy", "1/3;0.6,0.8"])
    assert code == 0
    assert "promoted" in err
    assert json.loads(out)["backend"] == "approx"


def test_backend_exact_rejects_decimals(capsys):
    code, _, err = run_cli(capsys, ["hf", "--n", "1", "--backend", "exact",
                                    "--holonomy", "0.6,0.8"])
    assert code == 2
    assert "exact" in err


def test_backend_approx_forces_promotion(capsys):
    code, out, _ = run_cli(capsys, ["hf", "--n", "2", "--backend", "approx",
                                    "--holonomy", "1/3,1/3"])
    assert code == 0
    record = json.loads(out)
    assert record["backend"] == "approx"
    assert record["nonvanishing"] is True


def test_spin_scan_counts(capsys):
    code, out, err = run_cli(capsys, ["spin-scan", "4"])
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 16
    assert sum(r["nonvanishing"] for r in records) == 1
    assert "nonvanishing: 1 of 16" in err


def test_spin_scan_n5_two_survivors(capsys):
    code, out, _ = run_cli(capsys, ["spin-scan", "5"])
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert sum(r["nonvanishing"] for r in records) == 2


def test_brane_scan_n3(capsys):
    code, out, err = run_cli(capsys, ["brane-scan", "3"])
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 64
    hits = [r for r in records if r["nonvanishing"]]
    assert len(hits) == 4
    for r in hits:
        assert len(set(r["holonomy"])) == 1


def test_scan_guards(capsys):
    code, _, err = run_cli(capsys, ["spin-scan", "13"])
    assert code == 2 and "13" in err
    code, _, err = run_cli(capsys, ["brane-scan", "7"])
    assert code == 2 and "7" in err


def test_csv_format(capsys):
    code, out, _ = run_cli(capsys, ["hf", "--n", "1", "--format", "csv"])
    assert code == 0
    header, row = out.splitlines()
    assert header.startswith("n,spin,holonomy")
    assert row.startswith("1,+1 +1,0/1,1 1,1 1,true,exact")


def test_maslov_check_empty_report(capsys):
    code, out, _ = run_cli(capsys, ["maslov-check", "--count", "0"])
    assert code == 0
    record = json.loads(out)
    assert record["checked"] == 0 and record["mismatches"] == []


def test_maslov_check_passes(capsys):
    code, out, _ = run_cli(capsys, ["maslov-check", "--count", "20",
                                    "--seed", "5"])
    assert code == 0
    assert json.loads(out)["mismatches"] == []


def test_maslov_check_deterministic_bytes():
    cmd = [sys.executable, "-m", "cftorus", "maslov-check",
           "--count", "15", "--seed", "9"]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout


def test_scan_jobs_flag_keeps_output_order():
    cmd = [sys.executable, "-m", "cftorus", "spin-scan", "3"]
    serial = subprocess.run(cmd, capture_output=True, check=True)
    parallel = subprocess.run(cmd + ["--jobs", "2"], capture_output=True,
                              check=True)
    assert serial.stdout == parallel.stdout


def test_selftest_passes(capsys):
    code, out, _ = run_cli(capsys, ["selftest"])
    assert code == 0
    assert "FAIL" not in out


def test_tol_env_override(capsys, monkeypatch):
    monkeypatch.setenv("CF_TOL", "0.5")
    # with an absurdly loose tolerance the nonunit entry is accepted
    code, out, _ = run_cli(capsys, ["hf", "--n", "1", "--holonomy", "0.8,0.0"])
    assert code == 0
    monkeypatch.delenv("CF_TOL")
    code, _, err = run_cli(capsys, ["hf", "--n", "1", "--holonomy", "0.8,0.0"])
    assert code == 2


# -- parser units -------------------------------------------------------------

def test_parse_spin_forms():
    assert parse_spin("0", 3).eps == (1, 1, 1, 1)
    assert parse_spin("{1,3}", 3).eps == (1, -1, 1, -1)
    assert parse_spin("1,3", 3).eps == (1, -1, 1, -1)
    assert parse_spin("1,-1,-1", 2).eps == (1, -1, -1)


def test_parse_spin_rejects_bad_vector():
    with pytest.raises(ValueError):
        parse_spin("1,1,-1", 2)  # product is -1


def test_parse_holonomy_integer_units_stay_exact():
    hol = parse_holonomy("1,-1", 2, 1e-9)
    assert hol.exact
    assert hol.entry_strings() == ["0/1", "1/2"]


def test_parse_holonomy_entry_count_checked():
    with pytest.raises(ValueError):
        parse_holonomy("1/3", 2, 1e-9)
