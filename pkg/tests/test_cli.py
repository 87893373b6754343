from __future__ import annotations

import itertools
import json
import re

import pytest

from pachner33 import cli


def run(capsys, *argv):
    rc = cli.main(list(argv))
    return rc, capsys.readouterr().out


def test_verify_pachner_deterministic(capsys):
    rc1, out1 = run(capsys, "verify-pachner", "--seed", "5")
    rc2, out2 = run(capsys, "verify-pachner", "--seed", "5")
    assert rc1 == rc2 == 0
    assert out1 == out2
    rc3, out3 = run(capsys, "verify-pachner", "--seed", "6")
    assert rc3 == 0
    assert out3 != out1


def test_verify_pachner_report_contents(capsys):
    rc, out = run(capsys, "verify-pachner", "--seed", "1")
    assert rc == 0
    rep = json.loads(out)
    for key in (
        "seed",
        "const",
        "max_residual",
        "annihilator_angle",
        "annihilator_dimension",
        "loop_residuals",
        "gauges",
    ):
        assert key in rep
    assert rep["seed"] == 1
    assert rep["annihilator_dimension"] == 9
    assert len(rep["loop_residuals"]) == 10
    assert rep["max_residual"] <= 1e-8
    assert abs(complex(*rep["const"])) > 1e-10
    assert len(rep["gauges"]) == 6


def test_verify_pachner_elliptic(capsys):
    rc, out = run(capsys, "verify-pachner", "--elliptic", "--seed", "2")
    assert rc == 0
    rep = json.loads(out)
    assert rep["source"] == "elliptic"
    assert rep["within_tolerance"] is True


def test_verify_pachner_batch(capsys):
    rc, out = run(capsys, "verify-pachner", "--seed", "7", "--batch", "2")
    assert rc == 0
    rep = json.loads(out)
    assert rep["batch"] == 2
    assert [r["seed"] for r in rep["runs"]] == [7, 8]
    assert rep["all_within_tolerance"] is True


def test_all_ones_cocycle_names_the_degeneracy(capsys, tmp_path):
    vals = {",".join(map(str, c)): [1.0, 0.0] for c in itertools.combinations(range(1, 7), 3)}
    path = tmp_path / "ones.json"
    path.write_text(json.dumps({"degree": 2, "values": vals}))
    rc, out = run(capsys, "verify-pachner", "--cocycle", str(path))
    assert rc == 2
    rep = json.loads(out)
    assert rep["error"] == "DegenerateCocycleError"
    assert "lambda_minus" in rep["message"]


def test_conversion_roundtrip(capsys, tmp_path):
    f_path = tmp_path / "F.json"
    om_path = tmp_path / "om.json"
    f2_path = tmp_path / "F2.json"
    rc, _ = run(capsys, "weight-from-cocycle", "--seed", "3", "--out", str(f_path))
    assert rc == 0
    rc, _ = run(capsys, "cocycle-from-weight", "--cocycle", str(f_path), "--out", str(om_path))
    assert rc == 0
    rc, _ = run(capsys, "weight-from-cocycle", "--cocycle", str(om_path), "--out", str(f2_path))
    assert rc == 0
    # the output is gauge fixed, so the same cocycle gives the same matrix
    phi1 = json.loads(f_path.read_text())["phi"]
    phi2 = json.loads(f2_path.read_text())["phi"]
    assert phi1.keys() == phi2.keys()
    for k in phi1:
        assert abs(complex(*phi1[k]) - complex(*phi2[k])) < 1e-10


def test_weight_from_cocycle_rejects_all_ones(capsys, tmp_path):
    vals = {",".join(map(str, c)): [1.0, 0.0] for c in itertools.combinations(range(1, 6), 3)}
    path = tmp_path / "ones5.json"
    path.write_text(json.dumps({"degree": 2, "values": vals}))
    rc, out = run(capsys, "weight-from-cocycle", "--cocycle", str(path))
    assert rc == 2
    assert "lambda_minus" in json.loads(out)["message"]


def test_edge_operators_output(capsys, tmp_path):
    f_path = tmp_path / "F.json"
    run(capsys, "weight-from-cocycle", "--seed", "9", "--out", str(f_path))
    rc, out = run(capsys, "edge-operators", "--cocycle", str(f_path))
    assert rc == 0
    rep = json.loads(out)
    assert rep["normalized"] is True
    assert len(rep["edges"]) == 10
    for op in rep["edges"].values():
        assert len(op["terms"]) == 5


def test_elliptic_f_accepts_explicit_params(capsys, tmp_path):
    rc, out = run(capsys, "elliptic-f", "--seed", "4")
    assert rc == 0
    rep = json.loads(out)
    params = rep["params"]
    coords_path = tmp_path / "coords.json"
    coords_path.write_text(json.dumps({"coords": params["coords"]}))
    mod = params["modulus"]
    rc2, out2 = run(
        capsys,
        "elliptic-f",
        "--coords",
        str(coords_path),
        f"--modulus={mod[0]!r},{mod[1]!r}",
    )
    assert rc2 == 0
    rep2 = json.loads(out2)
    assert rep["phi"] == rep2["phi"]


def test_selftest_tight_tolerance_fails(capsys):
    rc, out = run(capsys, "selftest", "--tolerance", "1e-15")
    assert rc == 1
    lines = [l for l in out.splitlines() if re.match(r"^(PASS|FAIL) criterion \d+:", l)]
    assert len(lines) == 10
    assert any(l.startswith("FAIL") for l in lines)
