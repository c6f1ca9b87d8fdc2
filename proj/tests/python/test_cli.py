"""End-to-end pipeline tests for the qcovpca CLI binary."""

import csv
import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("QCOVPCA_CLI", "qcovpca")


def run(*args, expect=0):
    result = subprocess.run([CLI, *args], capture_output=True, text=True)
    assert result.returncode == expect, (
        f"exit {result.returncode} != {expect}\nstdout: {result.stdout}\nstderr: {result.stderr}"
    )
    return result


def read_report(path):
    rows = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        assert reader.fieldnames == ["quantity", "index", "value"]
        for row in reader:
            rows.setdefault(row["quantity"], {})[int(row["index"])] = float(row["value"])
    return rows


def test_generate_moments_compare_curve(tmp_path):
    out = tmp_path / "run"
    run(
        "generate", "gaussian",
        "--dim", "16", "--clusters", "4", "--per-cluster", "10",
        "--seed", "5", "--out-dir", str(out),
    )
    ensemble = out / "ensemble.qce"
    assert ensemble.exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "generate"
    assert manifest["parameters"]["seed"] == 5

    run("moments", "--ensemble", str(ensemble), "--out-dir", str(out))
    moments = read_report(out / "moments.csv")
    assert abs(moments["trace_density"][0] - 1.0) < 1e-9
    assert moments["identity_residual"][0] < 1e-12

    run(
        "compare", "--ensemble", str(ensemble),
        "--n", "5", "--shift", "1", "--svg", "--out-dir", str(out),
    )
    compare = read_report(out / "compare.csv")
    assert compare["interlacing_satisfied"][0] == 1.0
    assert len(compare["eigenvalue_q"]) == 5
    assert (out / "compare_eigenvalues.svg").exists()
    svg = (out / "compare_eigenvalues.svg").read_text()
    assert svg.startswith("<svg")

    run(
        "curve", "--ensemble", str(ensemble),
        "--source", "both", "--n-list", "1,2,4", "--out-dir", str(out),
    )
    curve = read_report(out / "curve.csv")
    med = curve["median_infidelity_ensemble_density"]
    assert med[4] <= med[1] + 1e-12  # more components compress better


def test_encode_roundtrip(tmp_path):
    data = tmp_path / "vectors.csv"
    data.write_text("3,4\n1,0\n0,2\n")
    out = tmp_path / "enc"
    run("encode", "--input", str(data), "--dim", "4", "--qubits", "--out-dir", str(out))
    assert (out / "ensemble.qce").exists()

    run("moments", "--ensemble", str(out / "ensemble.qce"), "--out-dir", str(out))
    moments = read_report(out / "moments.csv")
    assert abs(moments["trace_density"][0] - 1.0) < 1e-9


def test_surrogate_and_varcost(tmp_path):
    out = tmp_path / "var"
    run(
        "generate", "surrogate",
        "--dim", "6", "--points", "15", "--seed", "2", "--out-dir", str(out),
    )
    run(
        "varcost", "--ensemble", str(out / "ensemble.qce"),
        "--cost", "vqsd", "--mode", "exact", "--passes", "25", "--out-dir", str(out),
    )
    report = read_report(out / "varcost.csv")
    costs = report["cost"]
    assert costs[max(costs)] <= costs[0] + 1e-15
    rec = report["eigenvalue_recovered"]
    ref = report["eigenvalue_reference"]
    assert max(abs(rec[j] - ref[j]) for j in rec) < 1e-3

    # identical seeds give identical traces
    out2 = tmp_path / "var2"
    run(
        "generate", "surrogate",
        "--dim", "6", "--points", "15", "--seed", "2", "--out-dir", str(out2),
    )
    run(
        "varcost", "--ensemble", str(out2 / "ensemble.qce"),
        "--cost", "vqsd", "--mode", "sampled", "--epsilon", "0.1", "--delta", "0.1",
        "--seed", "11", "--passes", "3", "--out-dir", str(out2),
    )
    first = (out2 / "varcost.csv").read_text()
    run(
        "varcost", "--ensemble", str(out2 / "ensemble.qce"),
        "--cost", "vqsd", "--mode", "sampled", "--epsilon", "0.1", "--delta", "0.1",
        "--seed", "11", "--passes", "3", "--out-dir", str(out2),
    )
    assert (out2 / "varcost.csv").read_text() == first


def test_idx_dump(tmp_path):
    idx = tmp_path / "tensor.idx"
    idx.write_bytes(bytes([0, 0, 8, 1, 0, 0, 0, 3, 7, 8, 9]))
    result = run("idx-dump", "--input", str(idx), "--out-dir", str(tmp_path))
    assert "rank 1" in result.stdout
    assert "7 8 9" in result.stdout


def test_exit_codes(tmp_path):
    # usage error: epsilon must be positive
    data = tmp_path / "e.qce"
    data.write_bytes(b"not an ensemble file")
    run(
        "varcost", "--ensemble", str(data), "--epsilon", "-1",
        "--out-dir", str(tmp_path), expect=2,
    )
    # data error: corrupt ensemble container
    result = run("moments", "--ensemble", str(data), "--out-dir", str(tmp_path), expect=3)
    err = json.loads(result.stderr.strip().splitlines()[-1])
    assert err["error"] == "corrupt_file"
    # usage error: --qubits with a non-power-of-two dimension
    csv_file = tmp_path / "v.csv"
    csv_file.write_text("1,2,3\n")
    run(
        "encode", "--input", str(csv_file), "--dim", "3", "--qubits",
        "--out-dir", str(tmp_path), expect=2,
    )
    # zero rows are a data error
    zero_csv = tmp_path / "z.csv"
    zero_csv.write_text("1,1\n0,0\n")
    result = run(
        "encode", "--input", str(zero_csv), "--dim", "2",
        "--out-dir", str(tmp_path), expect=3,
    )
    err = json.loads(result.stderr.strip().splitlines()[-1])
    assert err["error"] == "zero_vector"


def test_out_dir_env_default(tmp_path):
    env = dict(os.environ)
    env["QCOVPCA_OUT_DIR"] = str(tmp_path / "envdir")
    result = subprocess.run(
        [CLI, "generate", "bars-and-stripes", "--side", "2"],
        capture_output=True, text=True, env=env,
    )
    assert result.returncode == 0, result.stderr
    assert (tmp_path / "envdir" / "ensemble.qce").exists()
