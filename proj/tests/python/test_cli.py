"""Round trips through the command-line tool (skipped unless HILLSHARE_CLI is set)."""

import os
import subprocess

import pytest

CLI = os.environ.get("HILLSHARE_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="HILLSHARE_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_share_output_and_exit_codes():
    r = run("share", "--n", "2", "--m", "3", "--alpha", "1/3", "--kind", "upper")
    assert r.returncode == 0
    assert r.stdout.strip() == "2/3 (0.666666666667)"
    assert run("share", "--n", "2", "--unrestricted", "--alpha", "3/5", "--kind", "lower").stdout.startswith("3/5")
    assert run("share", "--n", "2", "--alpha", "7/25", "--kind", "guarantee").stdout.startswith("3/5")
    bad = run("share", "--n", "2", "--m", "2", "--alpha", "1/3")
    assert bad.returncode == 2
    assert "ceil(1/alpha)" in bad.stderr
    assert run("share", "--alpha", "1/3").returncode == 2
    assert run("--help").returncode == 0


@pytest.mark.parametrize("n,m,alpha", [("3", "7", "3/10"), ("2", "6", "27/100"), ("4", "12", "1/9")])
def test_witness_mms_allocate_verify(tmp_path, n, m, alpha):
    witness = tmp_path / "w.csv"
    r = run("witness", "--n", n, "--m", m, "--alpha", alpha, "--out", str(witness))
    assert r.returncode == 0
    claimed = witness.read_text().splitlines()[0].split("=", 1)[1]

    r = run("mms", "--instance", str(witness), "--n", n)
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == claimed

    report = tmp_path / "report.csv"
    r = run("allocate", "--instance", str(witness), "--agents", n, "--out", str(report))
    assert r.returncode == 0
    assert "all_satisfied=true" in report.read_text()

    r = run("verify", "--instance", str(witness), "--agents", n, "--allocation", str(report))
    assert r.returncode == 0, r.stdout + r.stderr


def test_verify_flags_violation(tmp_path):
    inst = tmp_path / "i.csv"
    inst.write_text("1,1\n1,1\n")
    report = tmp_path / "r.csv"
    report.write_text("agent,bundle,disutility,alpha,guarantee,satisfied\n1,1 2,1,1/2,2/3,false\n2,,0,1/2,2/3,true\n")
    r = run("verify", "--instance", str(inst), "--allocation", str(report))
    assert r.returncode == 1


def test_experiment_requires_seed_and_records_it(tmp_path):
    assert run("experiment", "synthetic", "--n", "2").returncode == 2
    out = tmp_path / "h.csv"
    r = run("experiment", "synthetic", "--n", "3", "--m", "5,6", "--count", "10", "--seed", "42", "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().splitlines()
    assert "seed=42" in lines[0]
    assert lines[1] == "n,m,bucket_lo,bucket_hi,count"
    assert sum(int(l.split(",")[-1]) for l in lines[2:]) == 20
    again = tmp_path / "h2.csv"
    run("experiment", "synthetic", "--n", "3", "--m", "5,6", "--count", "10", "--seed", "42", "--out", str(again))
    assert again.read_text() == out.read_text()


def test_experiment_curve_and_csv(tmp_path):
    r = run("experiment", "curve", "--n", "2", "--points", "3", "--seed", "1")
    assert r.returncode == 0
    assert "1/3,0.333333333333,0.666666666667,0.5,0.666666666667,1.333333333333" in r.stdout
    data = tmp_path / "d.csv"
    data.write_text("# valuations\n3,5,5,4\n1/3,1/3,1/3,0\n")
    r = run("experiment", "csv", "--input", str(data), "--n", "2", "--seed", "0")
    assert r.returncode == 0
    rows = [l for l in r.stdout.splitlines() if l and not l.startswith("#")]
    assert rows[0] == "n,m,alpha,hill_share,mms,ratio,ratio_decimal"
    assert rows[1].startswith("2,4,5/17,10/17,9/17,10/9")
