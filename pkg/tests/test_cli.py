"""Command-line interface: schemas, exit codes, determinism, atomic writes."""

import contextlib
import io
import json
import math

import numpy as np
import pytest

from tenfold import (
    equilibrium_for,
    grid_from_curve,
    make_ensemble,
    sample,
    semicircle,
)
from tenfold.cli import read_matrix_dump, read_measure_csv, run, write_measure_csv
from tenfold.errors import InvalidParams


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue(), err.getvalue()


# --- classes ---------------------------------------------------------------


def test_classes_text_table():
    code, out, err = run_cli(["classes"])
    assert code == 0 and err == ""
    assert "class" in out and "DIII_odd" in out and "min(s,t)" in out


def test_classes_csv_rows():
    code, out, _ = run_cli(["classes", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "class,family,beta,gamma,phi,psi,d,p,alpha"
    assert len(lines) == 13


def test_classes_json_records():
    code, out, _ = run_cli(["classes", "--format", "json"])
    assert code == 0
    records = json.loads(out)
    assert len(records) == 12
    by_label = {r["class"]: r for r in records}
    assert by_label["A"]["d"] == "n"
    assert by_label["B"]["d"] == "2n+1"
    assert by_label["CII"]["alpha"] == "4|t-s|+3"
    assert by_label["AI"]["beta"] == 1


# --- sample ----------------------------------------------------------------


def test_sample_csv_schema_and_determinism(tmp_path):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    out_c = tmp_path / "c.csv"
    base = ["sample", "--class", "AI", "--n", "2", "--sigma2", "0.5",
            "--reps", "3", "--seed", "9"]
    assert run_cli(base + ["--out", str(out_a)])[0] == 0
    assert run_cli(base + ["--out", str(out_b)])[0] == 0
    assert run_cli(base[:-1] + ["10", "--out", str(out_c)])[0] == 0
    lines = out_a.read_text().strip().splitlines()
    assert lines[0] == "class,n,s,sigma2,seed,rep,index,value"
    assert len(lines) == 1 + 3 * 2
    first = lines[1].split(",")
    assert first[:3] == ["AI", "2", ""]
    float(first[-1])
    assert out_a.read_bytes() == out_b.read_bytes()
    assert out_a.read_bytes() != out_c.read_bytes()
    assert list(tmp_path.glob("*.tmp")) == []


def test_sample_matrix_dump_round_trip(tmp_path):
    path = tmp_path / "mats.json"
    code, _, _ = run_cli([
        "sample", "--class", "CII", "--n", "4", "--s", "1", "--reps", "2",
        "--seed", "5", "--emit-matrix", "--out", str(path),
    ])
    assert code == 0
    loaded = read_matrix_dump(str(path))
    ens = make_ensemble("CII", 4, s=1)
    direct = sample(ens, master_seed=5, reps=2)
    assert len(loaded) == 2
    for sm, ref in zip(loaded, direct):
        assert np.array_equal(sm.matrix, ref.matrix)


def test_sample_usage_errors():
    code, _, err = run_cli(["sample", "--class", "AI", "--n", "4", "--s", "1"])
    assert code == 2 and "--s" in err and err.startswith("tenfold sample: error:")
    code, _, err = run_cli(["sample", "--class", "AIII", "--n", "4"])
    assert code == 2 and "--s" in err
    code, _, err = run_cli(["sample", "--class", "XY", "--n", "4"])
    assert code == 2 and "--class" in err
    code, _, err = run_cli(["sample", "--class", "A", "--n", "4", "--bogus"])
    assert code == 2 and "unrecognized arguments" in err


# --- density ---------------------------------------------------------------


def test_density_closed_form_value():
    code, out, _ = run_cli([
        "density", "--class", "AI", "--n", "2", "--sigma2", "0.5",
        "--xs", "1,0",
    ])
    assert code == 0
    assert json.loads(out)["log_density"] == pytest.approx(-1.0, abs=1e-12)


def test_density_error_paths():
    code, _, err = run_cli([
        "density", "--class", "AI", "--n", "2", "--sigma2", "0.5", "--xs", "1",
    ])
    assert code == 2 and "--xs" in err
    code, _, err = run_cli([
        "density", "--class", "D", "--n", "3", "--xs", "0.5,1,-0.2",
    ])
    assert code == 1 and "OutOfSupport" in err


# --- equilibrium -----------------------------------------------------------


def test_equilibrium_curve_table():
    code, out, _ = run_cli([
        "equilibrium", "--class", "AI", "--n", "4", "--sigma2", "0.5",
        "--grid", "64", "--format", "csv",
    ])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,pdf,cdf"
    assert len(lines) == 65
    first = [float(v) for v in lines[1].split(",")]
    last = [float(v) for v in lines[-1].split(",")]
    assert first[0] == pytest.approx(-math.sqrt(2.0), abs=1e-12)
    assert first[2] == pytest.approx(0.0, abs=1e-12)
    assert last[2] == pytest.approx(1.0, abs=1e-12)


def test_equilibrium_grid_floor():
    code, _, err = run_cli([
        "equilibrium", "--class", "AI", "--n", "4", "--grid", "8",
    ])
    assert code == 2 and "--grid" in err


# --- rate ------------------------------------------------------------------


def test_rate_payload_on_equilibrium_measure(tmp_path):
    ens = make_ensemble("AI", 6, sigma2=0.5)
    measure_path = tmp_path / "measure.csv"
    write_measure_csv(str(measure_path), grid_from_curve(equilibrium_for(ens), 2048))
    code, out, _ = run_cli([
        "rate", "--class", "AI", "--n", "6", "--sigma2", "0.5",
        "--measure", str(measure_path), "--calibrate",
    ])
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"energy", "field", "c", "rate", "kappa", "beta", "gamma"}
    assert payload["beta"] == 1 and payload["gamma"] == 1
    assert payload["kappa"] == pytest.approx(1.0)
    assert payload["c"] == pytest.approx(0.375 + 0.25 * math.log(2.0), abs=1e-6)
    assert abs(payload["rate"]) <= 1e-6
    assert payload["field"] == pytest.approx(-0.25, abs=1e-4)


def test_rate_uncalibrated_has_null_constant(tmp_path):
    measure_path = tmp_path / "m.csv"
    write_measure_csv(str(measure_path), grid_from_curve(semicircle(0.5, 1), 64))
    code, out, _ = run_cli([
        "rate", "--class", "AI", "--n", "6", "--sigma2", "0.5",
        "--measure", str(measure_path),
    ])
    assert code == 0
    assert json.loads(out)["c"] is None


def test_rate_rejects_bad_measure_files(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n0,1,1\n")
    code, _, err = run_cli([
        "rate", "--class", "AI", "--n", "6", "--measure", str(bad),
    ])
    assert code == 1 and "InvalidParams" in err
    code, _, err = run_cli([
        "rate", "--class", "AI", "--n", "6",
        "--measure", str(tmp_path / "missing.csv"),
    ])
    assert code == 1


def test_measure_csv_round_trip(tmp_path):
    mu = grid_from_curve(semicircle(1.0, 2), 128)
    path = tmp_path / "measure.csv"
    write_measure_csv(str(path), mu)
    back = read_measure_csv(str(path))
    assert back.lo == mu.lo and back.hi == mu.hi
    assert np.array_equal(back.masses, mu.masses)


def test_measure_csv_rejects_gaps(tmp_path):
    path = tmp_path / "gap.csv"
    path.write_text("x_lo,x_hi,mass\n0.0,1.0,0.5\n2.0,3.0,0.5\n")
    with pytest.raises(InvalidParams):
        read_measure_csv(str(path))


def test_measure_csv_rejects_malformed_rows(tmp_path):
    short = tmp_path / "short.csv"
    short.write_text("x_lo,x_hi,mass\n0.0,1.0\n")
    with pytest.raises(InvalidParams):
        read_measure_csv(str(short))
    words = tmp_path / "words.csv"
    words.write_text("x_lo,x_hi,mass\n0.0,one,1.0\n")
    code, _, err = run_cli([
        "rate", "--class", "AI", "--n", "6", "--measure", str(words),
    ])
    assert code == 1 and "InvalidParams" in err


def test_matrix_dump_rejects_malformed_files(tmp_path):
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    with pytest.raises(InvalidParams):
        read_matrix_dump(str(garbled))
    missing_keys = tmp_path / "missing.json"
    missing_keys.write_text('[{"label": "AI"}]')
    with pytest.raises(InvalidParams):
        read_matrix_dump(str(missing_keys))


# --- ks --------------------------------------------------------------------


def test_ks_payload_and_thread_independence(tmp_path):
    one = tmp_path / "one.json"
    three = tmp_path / "three.json"
    base = ["ks", "--class", "AI", "--n", "10,20", "--sigma2", "0.5",
            "--reps", "4", "--seed", "1"]
    assert run_cli(base + ["--threads", "1", "--out", str(one)])[0] == 0
    assert run_cli(base + ["--threads", "3", "--out", str(three)])[0] == 0
    assert one.read_bytes() == three.read_bytes()
    payload = json.loads(one.read_text())
    assert payload["descriptor"] == {"label": "AI", "sigma2": 0.5, "s": None}
    assert payload["seed"] == 1
    assert [e["n"] for e in payload["entries"]] == [10, 20]
    for entry in payload["entries"]:
        assert entry["wall_time"] is None
        assert 0.0 <= entry["ks_distance"] <= 1.0


def test_ks_env_thread_override(tmp_path, monkeypatch):
    flag = tmp_path / "flag.json"
    env = tmp_path / "env.json"
    base = ["ks", "--class", "AI", "--n", "10", "--reps", "3", "--seed", "2"]
    assert run_cli(base + ["--threads", "2", "--out", str(flag)])[0] == 0
    monkeypatch.setenv("TENFOLD_THREADS", "5")
    assert run_cli(base + ["--out", str(env)])[0] == 0
    assert flag.read_bytes() == env.read_bytes()
    monkeypatch.setenv("TENFOLD_THREADS", "abc")
    code, _, err = run_cli(base)
    assert code == 2 and "TENFOLD_THREADS" in err


def test_ks_usage_errors():
    code, _, err = run_cli(["ks", "--class", "AI", "--n", "10,20",
                            "--format", "csv"])
    assert code == 2 and "--format" in err
    code, _, err = run_cli(["ks", "--class", "AIII", "--n", "8,16"])
    assert code == 2 and "--s-frac" in err
    code, _, err = run_cli(["ks", "--class", "AI", "--n", "20,10"])
    assert code == 2 and "--n" in err
    code, _, err = run_cli(["ks", "--class", "AIII", "--n", "8,16",
                            "--s-frac", "0.7"])
    assert code == 2 and "--s-frac" in err
    code, _, err = run_cli(["ks", "--class", "AI", "--n", "10",
                            "--s-frac", "0.25"])
    assert code == 2 and "--s-frac" in err


# --- ldp -------------------------------------------------------------------


def test_ldp_censoring_and_schema(tmp_path):
    path = tmp_path / "ldp.json"
    code, _, _ = run_cli([
        "ldp", "--class", "A", "--n", "4", "--delta", "1.0", "--reps", "5",
        "--seed", "0", "--out", str(path),
    ])
    assert code == 0
    payload = json.loads(path.read_text())
    assert payload["delta"] == 1.0
    (entry,) = payload["entries"]
    assert entry["censored"] is True
    assert entry["hit_count"] == 0
    assert entry["estimate"] is None


def test_ldp_usage_errors():
    code, _, err = run_cli(["ldp", "--class", "A", "--n", "4",
                            "--delta", "-1"])
    assert code == 2 and "--delta" in err


# --- oracle ----------------------------------------------------------------


def test_oracle_payload(tmp_path):
    path = tmp_path / "oracle.json"
    code, _, _ = run_cli([
        "oracle", "--class", "AI", "--n", "2", "--sigma2", "0.5",
        "--bins", "8", "--reps", "2000", "--seed", "3", "--out", str(path),
    ])
    assert code == 0
    payload = json.loads(path.read_text())
    assert payload["label"] == "AI" and payload["n"] == 2
    assert payload["raw"] is True
    assert payload["box"] == [-4.0, 4.0]
    assert 0.0 <= payload["discrepancy"] <= 1.0


def test_oracle_usage_errors():
    code, _, err = run_cli(["oracle", "--class", "AI", "--n", "3",
                            "--reps", "100"])
    assert code == 2 and "--n" in err
    code, _, err = run_cli(["oracle", "--class", "AI", "--n", "2",
                            "--box", "2,1", "--reps", "100"])
    assert code == 2 and "--box" in err


# --- check -----------------------------------------------------------------


def test_check_single_class_passes():
    code, out, _ = run_cli(["check", "--class", "AI", "--n", "4",
                            "--reps", "2", "--seed", "4", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "class,n,s,check,worst,status"
    assert len(lines) == 5
    checks = [line.split(",")[3] for line in lines[1:]]
    assert checks == ["structure", "trace_identity", "factorization", "spectra"]
    assert all(line.endswith("PASS") for line in lines[1:])


def test_check_all_classes_pass():
    code, out, _ = run_cli(["check", "--reps", "1", "--seed", "4",
                            "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 12 * 4
    assert all(line.endswith("PASS") for line in lines[1:])


# --- top level -------------------------------------------------------------


def test_no_subcommand_is_a_usage_error():
    code, _, _ = run_cli([])
    assert code == 2


def test_thread_floor():
    code, _, err = run_cli(["ks", "--class", "AI", "--n", "10",
                            "--reps", "2", "--threads", "0"])
    assert code == 2 and "--threads" in err
