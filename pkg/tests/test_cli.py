import json
import math

import numpy as np
import pytest

from dsff_lab.cli import main


def _run_pipeline(tmp_path, n=16, m=12, seed=5, points=10):
    cache = str(tmp_path / "spectra.bin")
    est_csv = str(tmp_path / "estimate.csv")
    thy_csv = str(tmp_path / "theory.csv")
    assert main([
        "sample", "--n", str(n), "--m", str(m), "--seed", str(seed), "--out", cache,
    ]) == 0
    assert main([
        "estimate", "--spectra", cache, "--tau-min", "0.3", "--tau-max", "10",
        "--points", str(points), "--out", est_csv,
    ]) == 0
    assert main([
        "theory", "--n", str(n), "--tau-min", "0.3", "--tau-max", "10",
        "--points", str(points), "--out", thy_csv,
    ]) == 0
    return cache, est_csv, thy_csv


def _read_rows(path):
    header, rows = None, []
    for line in open(path):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line.split(",")
        else:
            rows.append(dict(zip(header, line.split(","))))
    return header, rows


def test_pipeline_end_to_end(tmp_path, capsys):
    cache, est_csv, thy_csv = _run_pipeline(tmp_path)
    merged = str(tmp_path / "merged.csv")
    svg = str(tmp_path / "merged.svg")
    assert main([
        "compare", "--estimate", est_csv, "--theory", thy_csv,
        "--out", merged, "--svg", svg,
    ]) == 0
    summary = capsys.readouterr().err
    assert "within_3sigma" in summary

    header, rows = _read_rows(merged)
    assert header == ["theta", "abs_tau", "t", "s", "k_mean", "k_stderr", "k_total", "z"]
    assert len(rows) == 10
    assert all(math.isfinite(float(r["z"])) for r in rows)
    assert "<svg" in open(svg).read()


def test_csv_schema_and_config(tmp_path):
    _, est_csv, thy_csv = _run_pipeline(tmp_path)
    lines = open(est_csv).read().splitlines()
    assert lines[0] == "# dsff-lab v1"
    assert lines[1].startswith("# config: ")
    config = json.loads(lines[1][len("# config: "):])
    assert config["command"] == "estimate"
    assert config["backend"] in ("compiled", "numpy")
    assert config["spec"]["n"] == 16
    assert lines[2] == (
        "theta,abs_tau,t,s,k_mean,k_stderr,disconnected_unbiased,connected,contact,M,N"
    )
    # floats round-trip through repr
    first = lines[3].split(",")
    assert float(first[1]) == 0.3
    assert first[-2:] == ["12", "16"]

    tlines = open(thy_csv).read().splitlines()
    tconfig = json.loads(tlines[1][len("# config: "):])
    assert tconfig["command"] == "theory"
    assert tlines[2].split(",")[:7] == [
        "theta", "abs_tau", "t", "s", "k_total", "disconnected", "connected",
    ]


def test_estimate_is_byte_deterministic(tmp_path):
    cache, est_csv, _ = _run_pipeline(tmp_path)
    again = str(tmp_path / "again.csv")
    assert main([
        "estimate", "--spectra", cache, "--tau-min", "0.3", "--tau-max", "10",
        "--points", "10", "--out", again,
    ]) == 0
    assert open(est_csv).read() == open(again).read()


def test_sample_echoes_seed(tmp_path, capsys):
    cache = str(tmp_path / "s.bin")
    assert main(["sample", "--n", "8", "--m", "2", "--seed", "99", "--out", cache]) == 0
    assert "seed=99" in capsys.readouterr().out


def test_sample_draws_entropy_seed(tmp_path, capsys):
    cache = str(tmp_path / "s.bin")
    assert main(["sample", "--n", "8", "--m", "2", "--out", cache]) == 0
    out = capsys.readouterr().out
    assert "seed=" in out
    assert int(out.split("seed=")[1]) < 2**64


def test_cache_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("DSFF_LAB_CACHE_DIR", str(tmp_path))
    assert main(["sample", "--n", "8", "--m", "2", "--seed", "1", "--out", "rel.bin"]) == 0
    assert (tmp_path / "rel.bin").exists()
    assert main(["estimate", "--spectra", "rel.bin", "--points", "3", "--out",
                 str(tmp_path / "e.csv")]) == 0


def test_missing_cache_exits_3(tmp_path, capsys):
    assert main(["estimate", "--spectra", str(tmp_path / "nope.bin")]) == 3
    assert "error:" in capsys.readouterr().err


def test_corrupt_cache_exits_3(tmp_path, capsys):
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"garbage")
    assert main(["estimate", "--spectra", str(bad)]) == 3
    assert "error:" in capsys.readouterr().err


def test_exact_gaussian_rejects_beta_one(capsys):
    assert main(["theory", "--n", "8", "--exact-gaussian", "--beta", "1"]) == 2
    assert "beta 2" in capsys.readouterr().err


def test_exact_gaussian_columns(tmp_path):
    out = str(tmp_path / "exact.csv")
    assert main([
        "theory", "--n", "64", "--exact-gaussian", "--tau-min", "0.5",
        "--tau-max", "5", "--points", "4", "--out", out,
    ]) == 0
    header, rows = _read_rows(out)
    assert header == ["theta", "abs_tau", "t", "s", "k_total", "contact", "disconnected", "connected", "N"]
    # contact + disconnected + connected recombine
    for r in rows:
        total = float(r["contact"]) + float(r["disconnected"]) + float(r["connected"])
        assert float(r["k_total"]) == pytest.approx(total, rel=1e-12)


def test_grid_mismatch_exits_3(tmp_path, capsys):
    _, est_csv, _ = _run_pipeline(tmp_path)
    other = str(tmp_path / "other.csv")
    assert main([
        "theory", "--n", "16", "--tau-min", "0.4", "--tau-max", "10",
        "--points", "10", "--out", other,
    ]) == 0
    assert main(["compare", "--estimate", est_csv, "--theory", other]) == 3
    assert "grid mismatch at row 0" in capsys.readouterr().err


def test_row_count_mismatch_exits_3(tmp_path, capsys):
    _, est_csv, _ = _run_pipeline(tmp_path)
    other = str(tmp_path / "other.csv")
    assert main([
        "theory", "--n", "16", "--tau-min", "0.3", "--tau-max", "10",
        "--points", "7", "--out", other,
    ]) == 0
    assert main(["compare", "--estimate", est_csv, "--theory", other]) == 3
    assert "rows" in capsys.readouterr().err


def test_compare_subtract_disconnected(tmp_path):
    _, est_csv, thy_csv = _run_pipeline(tmp_path)
    svg = str(tmp_path / "conn.svg")
    assert main([
        "compare", "--estimate", est_csv, "--theory", thy_csv,
        "--svg", svg, "--subtract-disconnected", "--out", str(tmp_path / "m.csv"),
    ]) == 0
    assert "connected" in open(svg).read()


def test_verify_subcommand(tmp_path, capsys):
    report_path = str(tmp_path / "report.json")
    assert main(["verify", "--suite", "bessel", "--out", report_path]) == 0
    report = json.loads(open(report_path).read())
    assert report["all_passed"] is True
    assert set(report["suites"]) == {"bessel"}
    assert all(c["passed"] for c in report["suites"]["bessel"])
    assert "all passed" in capsys.readouterr().err


def test_no_subcommand_exits_2(capsys):
    assert main([]) == 2


def test_bad_argument_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["sample", "--n", "0", "--m", "1", "--out", "x.bin"])
    assert err.value.code == 2


def test_theory_tau_grid_default_reaches_past_plateau(tmp_path):
    out = str(tmp_path / "default.csv")
    assert main(["theory", "--n", "100", "--points", "5", "--out", out]) == 0
    _, rows = _read_rows(out)
    assert float(rows[-1]["abs_tau"]) == pytest.approx(20.0, rel=1e-12)  # 2 sqrt(N)
