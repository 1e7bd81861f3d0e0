import math

import numpy as np
import pytest

from fractional_kinetics import verify
from fractional_kinetics.fracops import SampledFunction, TimeGrid, frac_integral
from fractional_kinetics.kinetics import KineticModel, Variant, forcing, solve
from fractional_kinetics.oracle import (
    ConvergenceConditionError,
    TruncationError,
    equation_residual,
    laplace_ml_check,
    laplace_of_candidate,
    laplace_power_check,
    laplace_series_solution,
    residual,
    solve_volterra,
)

EPS = np.finfo(float).eps


class TestVolterra:
    def test_no_loss_returns_forcing(self):
        g = TimeGrid(1.0, 32)
        f = SampledFunction(g, np.cos(g.nodes))
        out = solve_volterra(f, 0.0, 0.5)
        np.testing.assert_array_equal(out.values, f.values)

    def test_exponential_decay(self):
        g = TimeGrid(2.0, 512)
        model = KineticModel(Variant.STANDARD, 1.0, 1.0, 1.0)
        N = solve_volterra(forcing(model, g), 1.0, 1.0)
        assert np.max(np.abs(N.values - np.exp(-g.nodes))) <= 1e-4

    def test_matches_standard_closed_form(self):
        g = TimeGrid(1.0, 512)
        model = KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 0.5, 1.0)
        N = solve_volterra(forcing(model, g), 1.0, 0.5)
        ref = solve(KineticModel(Variant.STANDARD, 1.0, 1.0, 0.5), g).values
        assert np.max(np.abs(N.values - ref)) / np.max(np.abs(ref)) <= 1e-3

    @pytest.mark.parametrize("nu", [0.5, 1.0, 1.5])
    def test_discrete_equation_is_solved(self, nu):
        g = TimeGrid(2.0, 256)
        f = forcing(KineticModel(Variant.ML_SOURCE, 1.0, 1.3, nu, 1.2, 0.4), g)
        N = solve_volterra(f, 1.3, nu)
        r = equation_residual(f, 1.3, nu, N)
        scale = np.max(np.abs(f.values)) + np.max(np.abs(N.values))
        assert r.max_abs <= 10 * EPS * scale

    def test_singular_forcing(self):
        g = TimeGrid(1.0, 256)
        model = KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 0.5, 0.7)
        N = solve_volterra(forcing(model, g), 1.0, 0.5)
        ref = solve(model, g).values
        assert math.isnan(N.values[0])
        rel = np.max(np.abs(N.values[1:] - ref[1:])) / np.max(np.abs(ref[1:]))
        assert rel <= 2e-2

    def test_rejects_negative_rate(self):
        g = TimeGrid(1.0, 4)
        with pytest.raises(ValueError):
            solve_volterra(SampledFunction(g, np.ones(5)), -1.0, 0.5)


class TestResidual:
    def test_zero_solution(self):
        g = TimeGrid(1.0, 16)
        zero = SampledFunction(g, np.zeros(17))
        r = equation_residual(zero, 1.0, 0.5, zero)
        assert np.all(r.per_node == 0) and r.max_abs == 0 and r.nodes_skipped == 0

    def test_closed_form_converges(self):
        model = KineticModel(Variant.STANDARD, 1.0, 1.0, 0.5)
        rel = [residual(model, solve(model, TimeGrid(2.0, n))).max_rel for n in (512, 1024)]
        assert rel[0] <= 1e-3
        assert 1.6 <= rel[0] / rel[1] <= 2.4

    def test_wrong_candidate(self):
        model = KineticModel(Variant.STANDARD, 2.0, 1.5, 0.6)
        g = TimeGrid(1.0, 64)
        const = SampledFunction(g, np.full(65, 2.0))
        r = residual(model, const)
        expect = 1.5**0.6 * 2.0 * g.nodes**0.6 / math.gamma(1.6)
        np.testing.assert_allclose(r.per_node, expect, rtol=1e-12, atol=1e-15)

    def test_singular_node_is_skipped(self):
        model = KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 0.5, 0.5)
        r = residual(model, solve(model, TimeGrid(1.0, 128)))
        assert r.nodes_skipped == 1 and math.isnan(r.per_node[0])
        assert np.isfinite(r.max_rel)

    def test_grid_mismatch(self):
        model = KineticModel(Variant.STANDARD, 1.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            equation_residual(forcing(model, TimeGrid(1.0, 8)), 1.0, 0.5,
                              solve(model, TimeGrid(1.0, 16)))


class TestLaplace:
    @pytest.mark.parametrize("rho,p,rhs", [(1.0, 2.0, 0.5), (2.0, 1.0, 1.0),
                                           (0.5, 1.0, math.sqrt(math.pi))])
    def test_power(self, rho, p, rhs):
        r = laplace_power_check(rho, p)
        assert r.rhs_closed == pytest.approx(rhs, rel=1e-15)
        assert r.rel_error <= 1e-8
        assert r.truncation_T > 0

    @pytest.mark.parametrize("alpha,beta,a,p,rhs", [
        (1.0, 1.0, -1.0, 1.0, 0.5),
        (1.0, 1.0, 1.0, 2.0, 1.0),
        (0.5, 1.0, -1.0, 2.0, 0.2928932188134524),
    ])
    def test_ml(self, alpha, beta, a, p, rhs):
        r = laplace_ml_check(alpha, beta, a, p)
        assert r.rhs_closed == pytest.approx(rhs, rel=1e-14)
        assert r.rel_error <= 1e-6

    def test_relative_error_field(self):
        r = laplace_ml_check(1.5, 2.0, -0.25, 3.0)
        assert r.rel_error == abs(r.lhs_numeric - r.rhs_closed) / max(abs(r.rhs_closed), 1e-300)

    @pytest.mark.parametrize("alpha,a,p", [(1.0, 1.0, 1.0), (0.5, 2.0, 3.9), (1.5, -1.0, 0.9)])
    def test_convergence_condition(self, alpha, a, p):
        with pytest.raises(ConvergenceConditionError):
            laplace_ml_check(alpha, 1.0, a, p)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            laplace_ml_check(1.0, 0.0, -1.0, 2.0)
        with pytest.raises(ValueError):
            laplace_power_check(0.0, 1.0)

    def test_candidate_transform(self):
        g = TimeGrid(30.0, 300)
        assert laplace_of_candidate(SampledFunction(g, np.ones(301)), 1.0) == pytest.approx(1.0, abs=1e-6)
        g = TimeGrid(15.0, 300)
        assert laplace_of_candidate(SampledFunction(g, g.nodes), 2.0) == pytest.approx(0.25, abs=1e-6)

    def test_transform_of_fractional_integral(self):
        g = TimeGrid(15.0, 6000)
        one = SampledFunction(g, np.ones(len(g)))
        ratio = laplace_of_candidate(frac_integral(one, 0.5), 2.0) / laplace_of_candidate(one, 2.0)
        assert ratio == pytest.approx(2**-0.5, abs=1e-4)

    def test_truncation_guard(self):
        g = TimeGrid(5.0, 50)
        with pytest.raises(TruncationError):
            laplace_of_candidate(SampledFunction(g, np.ones(51)), 1.0)
        # an analytic tail makes a short range acceptable
        v = laplace_of_candidate(SampledFunction(g, np.ones(51)), 1.0, tail=lambda T, p: math.exp(-p * T) / p)
        assert v == pytest.approx(1.0, abs=1e-12)


def _series_gap(model, terms=40):
    # sample where |c^nu t^nu| <= 2
    t_max = 2 ** (1 / model.nu) / model.c
    g = TimeGrid(t_max, 8)
    closed = solve(model, g).values[1:]
    series = laplace_series_solution(model, g.nodes[1:], terms=terms)
    return np.max(np.abs(series - closed)) / max(1.0, np.max(np.abs(closed)))


class TestSeriesReplication:
    @pytest.mark.parametrize("nu", verify.NUS)
    @pytest.mark.parametrize("mu", ["1", "1.5", "2", "nu+1"])
    def test_power_source_40_terms(self, nu, mu):
        mu = nu + 1 if mu == "nu+1" else float(mu)
        assert _series_gap(KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, nu, mu)) <= 1e-8

    @pytest.mark.parametrize("nu", [0.8, 1.0, 1.5])
    def test_every_model(self, nu):
        for model in verify.oracle_models(nu):
            assert _series_gap(model) <= 1e-8, model.describe()

    def test_half_order_gap_is_truncation(self):
        # at nu = 1/2 the 41st term is still 2^40 / Gamma(21) ~ 5e-7; with
        # enough terms the expansion closes the gap to rounding level
        model = KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 0.5, 1.0)
        assert _series_gap(model, terms=40) > 1e-8
        assert _series_gap(model, terms=80) <= 1e-12
