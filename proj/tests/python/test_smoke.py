import json
import math

import pytest

import maxsurf


def test_expression_roundtrip():
    e = maxsurf.Expr("z^2 + 1")
    assert e(1j) == 0
    assert abs(e(2.0) - 5.0) < 1e-15
    d = e.deriv()
    assert abs(d(3.0) - 6.0) < 1e-14
    back = maxsurf.Expr(str(d))
    assert abs(back(0.5 + 0.25j) - d(0.5 + 0.25j)) < 1e-14


def test_expression_errors():
    with pytest.raises(ValueError):
        maxsurf.Expr("z^(1/2)")
    with pytest.raises(ArithmeticError):
        maxsurf.Expr("1/z")(0.0)


def test_canonical_invariants_spot_values():
    s = maxsurf.canonical_invariants("z", "2*z", 2.0)
    assert abs(s["E"] - 45.0 / 8.0) < 1e-13
    assert abs(s["K"] - 464.0 / 10125.0) < 1e-15
    assert abs(s["kappa"] + 336.0 / 10125.0) < 1e-15
    assert abs(s["K"] - (s["nu"] ** 2 + s["mu"] ** 2)) < 1e-15
    assert abs(s["kappa"] - 2 * s["nu"] * s["mu"]) < 1e-15


def test_correspondence_roundtrip():
    K, kappa = maxsurf.correspond_to_r42(1.0, 4.0)
    assert abs(K - 5.0) < 1e-12 and abs(kappa - 3.0) < 1e-12
    nu1, nu2 = maxsurf.correspond_from_r42(K, kappa)
    assert abs(nu1 - 1.0) < 1e-12 and abs(nu2 - 4.0) < 1e-12

    r1 = maxsurf.r31_invariants("z", 2.0)
    r2 = maxsurf.r31_invariants("2*z", 2.0)
    s = maxsurf.canonical_invariants("z", "2*z", 2.0)
    K, kappa = maxsurf.correspond_to_r42(r1["nu"], r2["nu"])
    assert abs(K - s["K"]) < 1e-14
    assert abs(maxsurf.geometric_mean_E(r1["E"], r2["E"]) - s["E"]) < 1e-13


def test_canonical_parameter():
    s = maxsurf.canonical_parameter("1", "z", "z^2", 1.0, 4.0)
    want = 8.0**0.25 * 0.8 * (4.0**1.25 - 1.0)
    assert abs(s - want) < 1e-8


def test_field_csv():
    csv = maxsurf.invariant_field_csv("z", "2*z", 1.5, 2.5, 0.0, 1.0, 9, 9)
    lines = csv.strip().split("\n")
    assert lines[0] == "u,v,E,K,kappa,nu,mu,valid"
    assert len(lines) == 1 + 81
    row = dict(zip(lines[0].split(","), lines[5].split(",")))
    assert row["u"] == "2" and row["v"] == "0"
    assert float(row["E"]) == 5.625


def test_patch_csv():
    csv = maxsurf.patch_csv("z", "2*z", 1.5, 2.5, 0.0, 1.0, 9, 9, t0=1.5 + 0j)
    lines = csv.strip().split("\n")
    assert lines[0] == "u,v,x1,x2,x3,x4"
    first = [float(x) for x in lines[1].split(",")]
    # psi vanishes at the base point, which is the first grid corner
    assert max(abs(v) for v in first[2:]) < 1e-12


def test_hyperplane():
    r = maxsurf.hyperplane_test("2+z", "2+z", -0.5, 0.5, -0.5, 0.5, 9, 9)
    assert r["in_hyperplane"]
    assert abs(abs(r["a"]) - 1.0) < 1e-9

    r = maxsurf.hyperplane_test("z", "2*z", 1.5, 2.5, 0.0, 1.0, 9, 9)
    assert not r["in_hyperplane"]


def test_run_job(tmp_path):
    cfg = {
        "domain": {"u0": 1.5, "u1": 2.5, "v0": 0.0, "v1": 1.0, "nu": 9, "nv": 9},
        "generators": {"kind": "pair", "g1": "z", "g2": "2*z"},
    }
    rc, log = maxsurf.run_job("invariants", json.dumps(cfg), str(tmp_path))
    assert rc == 0
    assert (tmp_path / "invariants.csv").exists()
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["K_minus_abs_kappa"]["min"] > 0

    rc, log = maxsurf.run_job("invariants", "{bad json", str(tmp_path))
    assert rc == 1
