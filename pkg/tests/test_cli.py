import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from optapprox.cli import RunConfig, main
from optapprox.errors import DomainError
from optapprox.filter_design import magnitude_response
from optapprox.serialization import decode_complex_list, filter_from_dict, opa_from_dict


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def read_json(path):
    return json.loads(path.read_text())


def test_opa_examples(tmp_path, capsys):
    code, _ = run(capsys, "opa", "--f", "one_minus_z", "--n", 2, "--space", "H2", "--out", tmp_path)
    assert code == 0
    data = read_json(tmp_path / "opa.json")
    np.testing.assert_allclose(data["coefficients"], [0.75, 0.5, 0.25], atol=1e-15)
    assert len(data["zeros"]) == 2

    run(capsys, "opa", "--f", "2", "--n", 0, "--out", tmp_path)
    data = read_json(tmp_path / "opa.json")
    assert data["coefficients"] == [0.5] and data["residual_sq"] == 0.0

    run(capsys, "opa", "--f", "one_minus_z", "--n", 1, "--space", "D:1", "--out", tmp_path)
    np.testing.assert_allclose(read_json(tmp_path / "opa.json")["coefficients"], [5 / 11, 2 / 11], atol=1e-15)


def test_opa_toeplitz_method(tmp_path, capsys):
    code, _ = run(capsys, "opa", "--f", "one_minus_z", "--n", 2, "--method", "toeplitz", "--out", tmp_path)
    assert code == 0
    np.testing.assert_allclose(read_json(tmp_path / "opa.json")["coefficients"], [0.75, 0.5, 0.25], atol=1e-12)
    code, out = run(capsys, "opa", "--f", "one_minus_z", "--n", 2, "--method", "toeplitz", "--space", "A2",
                    "--out", tmp_path)
    assert code == 2 and json.loads(out)["error"] == "DomainError"


def test_opa_json_round_trip(tmp_path, capsys):
    run(capsys, "opa", "--f", "1,0.3+0.2j,-0.5", "--n", 4, "--out", tmp_path)
    data = read_json(tmp_path / "opa.json")
    res = opa_from_dict(data)
    assert res.n == 4
    again = json.loads(json.dumps(data))
    np.testing.assert_array_equal(opa_from_dict(again).coefficients, res.coefficients)
    # re-encode bit-identically
    assert decode_complex_list(data["coefficients"]).tolist() == res.coefficients.tolist()


def test_error_exits(tmp_path, capsys):
    code, out = run(capsys, "opa", "--f", "0,1", "--n", 2, "--space", "nonsense", "--out", tmp_path)
    assert code == 2 and json.loads(out)["error"] == "DomainError"
    code, out = run(capsys, "opa", "--f", "not a function", "--n", 2, "--out", tmp_path)
    assert code == 2
    code, out = run(capsys, "opa", "--f", "bergman_extremal:20", "--n", 2, "--space", "A2", "--out", tmp_path)
    assert code == 3 and json.loads(out)["error"] == "PrecisionError"
    code, out = run(capsys, "opa", "--f", "one", "--n", 1, "--tol", "-1", "--out", tmp_path)
    assert code == 2


def test_bergman_extremal_builtin(tmp_path, capsys):
    code, _ = run(capsys, "opa", "--f", "bergman_extremal", "--n", 1, "--space", "A2", "--out", tmp_path)
    assert code == 0
    zero = read_json(tmp_path / "opa.json")["zeros"][0]
    assert abs(abs(complex(*zero)) - 2 * np.sqrt(2) / 3) < 1e-3


def test_design(tmp_path, capsys):
    code, _ = run(capsys, "design", "--eta", 0.1, "--N", 24, "--M", 24, "--T", 256, "--out", tmp_path)
    assert code == 0
    data = read_json(tmp_path / "filter.json")
    poles = decode_complex_list(data["poles"])
    assert np.all(np.abs(poles) < 1)
    H = filter_from_dict(data)
    with open(tmp_path / "magnitude.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["s", "magnitude"]
    mag = np.array([float(r[1]) for r in rows[1:]])
    np.testing.assert_allclose(mag, magnitude_response(H, mag.size)[1], rtol=1e-12)
    report = read_json(tmp_path / "report.json")
    assert report["numerator"] <= report["denominator"]


def test_design_constant_and_capped(tmp_path, capsys):
    spec = tmp_path / "const.json"
    spec.write_text(json.dumps({"breakpoints": [], "values": [1.5]}))
    code, _ = run(capsys, "design", "--spec", spec, "--N", 4, "--M", 4, "--T", 32, "--grid", 256, "--out", tmp_path)
    assert code == 0
    with open(tmp_path / "magnitude.csv") as fh:
        mag = [float(r[1]) for r in list(csv.reader(fh))[1:]]
    np.testing.assert_allclose(mag, 1.5, rtol=1e-9)

    spec.write_text(json.dumps({"breakpoints": [1.0, 1.02], "values": [1.0, 0.0, 1.0]}))
    code, _ = run(capsys, "design", "--spec", spec, "--eta", 50, "--N", 8, "--M", 8, "--T", 128, "--out", tmp_path)
    assert code == 0
    assert np.isclose(read_json(tmp_path / "report.json")["epsilon"], 0.9 * 0.02)


def test_zeros(tmp_path, capsys):
    code, _ = run(capsys, "zeros", "--f", "one_minus_z", "--n-max", 20, "--space", "D:1", "--out", tmp_path)
    assert code == 0
    with open(tmp_path / "zeros.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == sum(range(1, 21))
    assert all(float(r["modulus"]) > 1 for r in rows)
    summary = read_json(tmp_path / "zeros_summary.json")
    assert summary["min_modulus"] > 1


def test_decay(tmp_path, capsys):
    code, _ = run(capsys, "decay", "--f", "one_minus_z", "--n-max", 100, "--out", tmp_path)
    assert code == 0
    with open(tmp_path / "decay.csv") as fh:
        rows = list(csv.DictReader(fh))
    n = np.array([int(r["n"]) for r in rows])
    res = np.array([float(r["residual_sq"]) for r in rows])
    np.testing.assert_allclose(res, 1 / (n + 2), rtol=1e-10)
    report = read_json(tmp_path / "decay_report.json")
    assert abs(report["fitted_exponent"] + 1) < 0.05
    assert report["band_low"] > 0


def test_double_lsi(tmp_path, capsys):
    code, _ = run(capsys, "double-lsi", "--f", "half_minus_z", "--k", 16, 64, "--out", tmp_path)
    assert code == 0
    results = read_json(tmp_path / "double_lsi.json")["results"]
    np.testing.assert_allclose(results[-1]["coefficients"], [2.0, -1.0], atol=1e-6)


def test_jacobi(tmp_path, capsys):
    code, _ = run(capsys, "jacobi", "--N", 2000, "--space", "bergman", "--out", tmp_path)
    assert code == 0
    data = read_json(tmp_path / "jacobi.json")
    assert abs(data["M"] - 2 * np.sqrt(2) / 3) < 2e-3
    assert data["gap_condition"] is True
    assert abs(data["estimate"]["value"] - data["M"]) < 1e-15


def test_boundary(tmp_path, capsys):
    code, _ = run(capsys, "boundary", "--f", "one_minus_z", "--n", 10, 20, "--space", "A2", "--out", tmp_path)
    assert code == 0
    sups = read_json(tmp_path / "boundary.json")["sup_error"]
    assert sups[1] < sups[0]


def test_config_merge_explicit_flag_wins(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"space": "D:1", "out": str(tmp_path / "from_config")}))
    run(capsys, "opa", "--f", "one_minus_z", "--n", 1, "--config", cfg)
    data = read_json(tmp_path / "from_config" / "opa.json")
    assert data["space"] == "D:1"
    run(capsys, "opa", "--f", "one_minus_z", "--n", 1, "--config", cfg, "--space", "H2")
    data = read_json(tmp_path / "from_config" / "opa.json")
    assert data["space"] == "H2"
    np.testing.assert_allclose(data["coefficients"], [2 / 3, 1 / 3])


def test_missing_config_is_reported(tmp_path, capsys):
    code, out = run(capsys, "opa", "--f", "one", "--n", 1, "--config", tmp_path / "missing.json")
    assert code == 2 and json.loads(out)["error"] == "ConfigError"


def test_determinism_byte_identical(tmp_path, capsys):
    outputs = []
    for i in range(2):
        out = tmp_path / f"run{i}"
        run(capsys, "zeros", "--f", "random:6", "--n-max", 8, "--seed", 7, "--out", out)
        run(capsys, "design", "--N", 8, "--M", 8, "--T", 64, "--grid", 512, "--out", out)
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outputs[0] == outputs[1]
    other = tmp_path / "other_seed"
    run(capsys, "zeros", "--f", "random:6", "--n-max", 8, "--seed", 8, "--out", other)
    assert (other / "zeros.csv").read_bytes() != outputs[0]["zeros.csv"]


def test_filter_json_round_trip(tmp_path, capsys):
    run(capsys, "design", "--N", 8, "--M", 6, "--T", 64, "--grid", 512, "--out", tmp_path)
    data = read_json(tmp_path / "filter.json")
    H = filter_from_dict(data)
    np.testing.assert_array_equal(H.b, np.array(data["b"]))
    np.testing.assert_array_equal(H.a, np.array(data["a"]))
    np.testing.assert_array_equal(H.poles, decode_complex_list(data["poles"]))
    assert H.M == 6 and H.N == 8


def test_run_config_validation():
    with pytest.raises(DomainError):
        RunConfig(tol=0.0)
    with pytest.raises(DomainError):
        RunConfig(grid=1)


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "optapprox", "opa", "--f", "one_minus_z", "--n", "2", "--out", str(tmp_path)],
        capture_output=True, text=True, check=True,
    )
    np.testing.assert_allclose(json.loads(proc.stdout)["coefficients"], [0.75, 0.5, 0.25], atol=1e-15)
