import os

import pytest

import fiscap

P0C = dict(alpha=0.2, **{"lambda": 0.0}, epsilon=0.2, delta=0.1, rho=0.4, mu=0.05,
           omega=0.3, sigma_d=0.2, sigma_f=0.05, m=1.0, tau1=0.2)


def test_p0c_solve():
    r = fiscap.solve(P0C)
    assert r["gamma"] == 0
    assert r["phi"] == pytest.approx(0.17)
    assert r["tau2_star"] == pytest.approx(0.462)
    assert r["regimes"]["prop2"] == "2.B.1"


def test_closed_form_matches_grid():
    closed = fiscap.optimal_tau2(P0C, 0)
    assert abs(closed - fiscap.brute_force_tau2(P0C, 0, 1e-4)) <= 2e-4


def test_threshold_and_revolution_ordering():
    thr = fiscap.threshold(P0C)
    rev = fiscap.revolution_threshold(P0C)
    assert rev <= thr
    assert fiscap.revolution_solve(P0C)["gamma"] == 1


def test_bargain_p1():
    p1 = dict(alpha=0.3, **{"lambda": 0.0}, epsilon=0.3, delta=0.3, rho=0.4, mu=0.1,
              omega=0.3, sigma_d=0.0, sigma_f=0.1, tau1=0.2)
    with pytest.warns(RuntimeWarning):
        r = fiscap.bargain(p1)
    assert r["regime"] == "4.A"
    assert r["sigma_d2_star"] == pytest.approx(0.206897, abs=1e-6)
    assert r["prop5"] == "5.A"


def test_violation_raises():
    bad = dict(P0C, rho=0.05)
    with pytest.raises(fiscap.AssumptionViolation):
        fiscap.solve(bad)
    with pytest.raises(ValueError):
        fiscap.validate({"alpha": 0.5})


def test_verify_small():
    r = fiscap.verify(trials=100, seed=1, variant="revolution", workers=2)
    assert r["failures"] == 0
    assert "revolution.ordering" in r["properties"]


def test_sweep_rows():
    fixed = dict(alpha=0.5, **{"lambda": 0.0}, delta=0.4, rho=0.5, mu=0.1, omega=0.5,
                 sigma_f=0.1, m=1.0, tau1=0.2)
    csv = fiscap.sweep(fixed, "sigma_d=0:1:0.5", "epsilon_minus_mu=0:0.2:0.1")
    lines = csv.strip().splitlines()
    assert len(lines) == 1 + 3 * 3
    assert lines[1].endswith(",invalid")
