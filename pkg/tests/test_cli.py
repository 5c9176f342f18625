import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from clonelab.cli import main, parse_weights
from clonelab.serialize import from_json, to_json
from clonelab.tensor import basis_ket


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_triplicator_endpoint(capsys):
    code, out, _ = run(capsys, "solve", "--triplicator", "--weights", "0.5,0.5,0", "--dim", "2")
    assert code == 0
    res = json.loads(out)
    assert res["kind"] == "triplicator"
    assert res["F_A"] == pytest.approx(5 / 6, abs=1e-12)
    assert res["F_B"] == pytest.approx(5 / 6, abs=1e-12)
    assert res["F_C"] == pytest.approx(5 / 9, abs=1e-12)


def test_solve_duplicator_keys(capsys):
    code, out, _ = run(capsys, "solve", "--duplicator", "--p", "0.5", "--dim", "2")
    assert code == 0
    res = json.loads(out)
    assert set(res) == {"kind", "p", "d", "lambda1", "lambda2", "alpha", "beta", "F_A", "F_B"}


@pytest.mark.parametrize("argv, name", [
    (["solve", "--triplicator", "--weights", "0.5,0.6,0", "--dim", "2"], "--weights"),
    (["solve", "--triplicator", "--weights", "0.5,0.5", "--dim", "2"], "--weights"),
    (["solve", "--duplicator", "--p", "1.2", "--dim", "2"], "--p"),
    (["solve", "--duplicator", "--p", "0.5", "--dim", "17"], "--dim"),
    (["choi", "--triplicator", "--weights", "1,0,0", "--dim", "7"], "--dim"),
    (["solve", "--duplicator", "--dim", "2"], "--p"),
    (["frontier", "--fc", "0.1", "--dim", "2"], "F_C"),
])
def test_validation_exit_2(capsys, argv, name):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert name in err


def test_unknown_flag_exit_2(capsys):
    code, _, err = run(capsys, "solve", "--duplicator", "--p", "0.5", "--dim", "2", "--bogus")
    assert code == 2
    assert "--bogus" in err


def test_verify_requires_seed(capsys):
    code, _, err = run(capsys, "verify", "--duplicator", "--p", "0.5", "--dim", "2")
    assert code == 2
    assert "--seed" in err


def test_parse_weights_renormalizes():
    w = parse_weights("0.3333333333,0.3333333333,0.3333333334")
    assert sum(w) == pytest.approx(1.0, abs=1e-15)
    w = parse_weights("0.7,0.3,0")
    assert w[2] == 0.0
    assert abs(sum(w) - 1.0) <= 1e-15


def test_choi_to_file(capsys, tmp_path):
    out = tmp_path / "S.json"
    code, _, _ = run(capsys, "choi", "--duplicator", "--p", "0.3", "--dim", "2", "--out", str(out))
    assert code == 0
    S = from_json(out.read_text())
    assert S.dims == (2, 2, 2)
    assert np.trace(S.entries).real == pytest.approx(2.0, abs=1e-12)


def test_apply(capsys, tmp_path):
    state = tmp_path / "psi.json"
    state.write_text(to_json(basis_ket(1, 2)))
    code, out, _ = run(capsys, "apply", "--triplicator", "--weights", "0.5,0.5,0", "--dim", "2",
                       "--state", str(state))
    assert code == 0
    res = json.loads(out)
    assert set(res["clones"]) == {"A", "B", "C"}
    assert res["fidelities"]["C"] == pytest.approx(5 / 9, abs=1e-12)
    rho_a = np.array(res["clones"]["A"]["re"])
    np.testing.assert_allclose(rho_a, np.diag([5 / 6, 1 / 6]), atol=1e-12)


def test_apply_density_matrix(capsys, tmp_path):
    state = tmp_path / "rho.json"
    state.write_text(to_json(basis_ket(2, 3).dm()))
    code, out, _ = run(capsys, "apply", "--duplicator", "--p", "1", "--dim", "3",
                       "--state", str(state))
    assert code == 0
    res = json.loads(out)
    assert "fidelities" not in res
    np.testing.assert_allclose(res["clones"]["B"]["re"], np.eye(3) / 3, atol=1e-12)


def test_apply_dim_mismatch(capsys, tmp_path):
    state = tmp_path / "psi.json"
    state.write_text(to_json(basis_ket(1, 3)))
    code, _, err = run(capsys, "apply", "--duplicator", "--p", "0.5", "--dim", "2",
                       "--state", str(state))
    assert code == 2


def test_verify_byte_identical():
    cmd = [sys.executable, "-m", "clonelab", "verify", "--duplicator", "--p", "0.5",
           "--dim", "2", "--samples", "500", "--seed", "7"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    report = json.loads(first)
    assert report["samples"] == 500 and report["seed"] == 7
    assert max(report["universality_std"]) <= 1e-10


def test_frontier_figure1(capsys, tmp_path):
    out = tmp_path / "fig1.csv"
    code, _, _ = run(capsys, "frontier", "--figure1", "--points", "201", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert list(rows[0]) == ["alpha", "beta", "gamma", "F_A", "F_B", "F_C"]
    blocks = [round(float(r["F_C"]), 9) for r in rows]
    changes = sum(1 for x, y in zip(blocks, blocks[1:]) if x != y)
    assert changes + 1 == 8


def test_frontier_sweep_jsonl(capsys):
    code, out, _ = run(capsys, "frontier", "--sweep", "--dim", "3", "--step", "0.5",
                       "--format", "jsonl")
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    assert len(lines) == 6
    assert all("weights" in x for x in lines)


def test_frontier_duplicator_csv(capsys):
    code, out, _ = run(capsys, "frontier", "--duplicator", "--dim", "3", "--points", "5")
    assert code == 0
    assert len(out.splitlines()) == 6
