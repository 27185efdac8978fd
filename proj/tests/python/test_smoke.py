"""Smoke tests for the python bindings: a few closed-form values and one
operator/oracle round trip."""

import math

import pytest

import fraclap as fl


def test_normalization_constant_closed_form():
    assert fl.normalization_constant(2, 0.5) == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-10)
    with pytest.raises(fl.DomainError):
        fl.normalization_constant(1, 0.5)


def test_gamma_values():
    assert fl.gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert fl.gamma_fn(5.0) == pytest.approx(24.0, rel=1e-12)


def test_holder_transfer_exponents():
    gamma_is, beta, gamma_eta = fl.holder_transfer_exponents(0.8, 0.5)
    assert gamma_is == pytest.approx(0.6)
    assert beta == pytest.approx(0.8 / 1.8)
    assert gamma_eta == pytest.approx(0.8 * 0.8 / 1.8)


def test_frac_laplacian_gaussian_center():
    params = fl.FracParams(2, 0.5)
    g = fl.preset_field("gaussian")
    value, err = fl.frac_laplacian(g, [0.0, 0.0], params)
    assert value == pytest.approx(math.pi, rel=1e-6)
    assert err < 1e-5
    assert fl.gaussian_fourier_oracle(0.5, 0.0, 2) == pytest.approx(math.pi, rel=1e-10)


def test_frac_laplacian_rejects_rough_fields():
    params = fl.FracParams(2, 0.5)
    cusp = fl.preset_field("holder-cusp(0.6)")
    with pytest.raises(fl.DomainError):
        fl.frac_laplacian(cusp, [0.0, 0.0], params)


def test_nonlocal_tail_constant():
    params = fl.FracParams(2, 0.5)
    one = fl.preset_field("constant")
    value, _ = fl.nonlocal_tail(one, [0.0, 0.0], 1.0, params)
    assert value == pytest.approx(2.0 * math.pi, rel=1e-6)


def test_poisson_kernel_and_normalization():
    params = fl.FracParams(2, 0.5)
    v = fl.poisson_kernel(1.0, [0.0, 0.0], [2.0, 0.0], params)
    assert v == pytest.approx(1.0 / (8.0 * math.pi * math.sqrt(3.0)), rel=1e-12)

    spec = fl.QuadratureSpec(rel_tol=1e-8, angular_rule=128)
    mass, err = fl.kernel_normalization(0.8, [0.2, 0.1], params, spec)
    assert mass == pytest.approx(1.0, abs=1e-4)


def test_solve_and_wos_agree():
    params = fl.FracParams(2, 0.5)
    spec = fl.QuadratureSpec(rel_tol=1e-8, angular_rule=256)
    pb = fl.BallProblem(0.8, fl.preset_field("gaussian"), params, spec)
    solve, err = fl.solve_dirichlet(pb, [0.2, 0.1])
    mean, stderr = fl.wos_solve(pb, [0.2, 0.1], 200000, 42)
    assert abs(solve - mean) <= 3.0 * (stderr + err)


def test_holder_estimator():
    exponent, _ = fl.holder_exponent_estimate(lambda x: abs(x[0]) ** 0.5, 1.0, 2, 2000, 6)
    assert exponent == pytest.approx(0.5, abs=0.1)


def test_run_suite_report_schema():
    rep = fl.run_suite("norms")
    assert rep["summary"]["failed"] == 0
    assert {"version", "config", "records", "summary"} <= set(rep.keys())
    for rec in rep["records"]:
        assert {"id", "suite", "value", "oracle", "err_est", "tol", "pass", "ms"} <= set(rec)
