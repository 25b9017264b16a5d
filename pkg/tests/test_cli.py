"""CLI surface: parsing, dispatch, formats, exit codes, determinism."""

import json
import math
import subprocess
import sys

import pytest

from voronoisum.cli import main, parse_complex
from voronoisum.specialfn import bessel


def run_cli(args, tmp_path=None):
    import io
    from contextlib import redirect_stdout, redirect_stderr
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(args)
    return code, out.getvalue(), err.getvalue()


def test_parse_complex():
    assert parse_complex("1.5") == 1.5 + 0j
    assert parse_complex("1,0.25") == 1 + 0.25j
    assert parse_complex("1e-3,-2E2") == 0.001 - 200j
    with pytest.raises(Exception):
        parse_complex("1,2,3")


def test_eval_h_hardy_value():
    code, out, _ = run_cli(["eval-h", "--k", "1", "--z", "0", "--x", "1",
                            "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    want = bessel(0, "K", 2.0) - 0.5 * math.pi * bessel(0, "Y", 2.0)
    assert abs(doc["result"]["value"][0] - want.real) < 1e-9
    assert doc["schema"] == 1
    assert "est_error" in doc["result"]


def test_eval_k_and_b():
    code, out, _ = run_cli(["eval-k", "--k", "2", "--z", "0.3", "--x", "2",
                            "--route", "real", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["route"] == "real_integral"
    code, out, _ = run_cli(["eval-b", "--z", "0", "--b", "2", "--format", "csv"])
    assert code == 0
    val = float(out.strip().splitlines()[1].split(",")[1])
    assert abs(val - math.pi / 4 * math.exp(-2)) < 1e-12


def test_verify_lambert_pass_and_fail_codes():
    code, out, _ = run_cli(["verify-lambert", "--k", "2", "--z", "0.5",
                            "--w", "1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert doc["result"]["rel_discrepancy"] < 1e-9
    # absurd tolerance forces a verification failure -> exit 2
    code, out, _ = run_cli(["verify-lambert", "--k", "2", "--z", "0.5",
                            "--w", "1", "--tol", "1e-30"])
    assert code == 2


def test_domain_error_exit_code_and_message():
    code, _, err = run_cli(["eval-h", "--k", "2", "--z", "5", "--x", "1"])
    assert code == 1
    assert "strip" in err          # names the violated constraint


def test_verify_lemmas():
    code, out, _ = run_cli(["verify-lemmas", "--which", "lemma45", "--k", "3"])
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_sieve_csv(tmp_path):
    out_file = tmp_path / "table.csv"
    code, _, _ = run_cli(["sieve", "--k", "1", "--z", "0", "--n", "12",
                          "--out", str(out_file)])
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0] == "n,re_sigma,im_sigma,re_s,im_s"
    assert lines[12].startswith("12,6.0")      # d(12) = 6


def test_tabulate_with_figure(tmp_path):
    csv_file = tmp_path / "h.csv"
    png_file = tmp_path / "h.png"
    code, _, _ = run_cli(["tabulate", "--k", "2", "--z", "0.5",
                          "--x-min", "0", "--x-max", "10", "--step", "1",
                          "--format", "csv", "--out", str(csv_file),
                          "--plot", str(png_file)])
    assert code == 0
    rows = csv_file.read_text().strip().splitlines()
    assert rows[0] == "x,re_h,im_h,route,est_error"
    assert len(rows) == 12
    assert png_file.exists() and png_file.stat().st_size > 1000


def test_verify_voronoi_small_with_trace_figure(tmp_path):
    png = tmp_path / "trace.png"
    code, out, _ = run_cli(["verify-voronoi", "--k", "1", "--z", "0.3333333",
                            "--alpha", "0.5", "--beta", "4.5", "--n", "64",
                            "--kernel", "bessel", "--tol", "0.01",
                            "--plot", str(png)])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["pass"] is True
    assert png.exists()


def test_deterministic_output(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    args = ["verify-lambert", "--k", "2", "--z", "0.5,0.1", "--w", "1,0.2"]
    run_cli(args + ["--out", str(a)])
    run_cli(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_module_invocation():
    r = subprocess.run([sys.executable, "-m", "voronoisum.cli", "eval-b",
                        "--z", "2", "--b", "1.5", "--format", "csv"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0
    val = float(r.stdout.strip().splitlines()[1].split(",")[1])
    assert abs(val + 0.5 * math.pi * 1.5 * math.exp(-1.5)) < 1e-12
