import math

import numpy as np
import pytest

from fractional_kinetics import kinetics
from fractional_kinetics.fracops import StartPolicy, TimeGrid
from fractional_kinetics.kinetics import KineticModel, ResonanceError, Variant, forcing, solve
from fractional_kinetics.specfun import mittag_leffler

GRID = TimeGrid(2.0, 8)  # nodes every 0.25


def at(sol, t):
    i = int(round(t / sol.grid.h))
    assert sol.grid.nodes[i] == t
    return sol.values[i]


class TestModel:
    def test_standard_needs_unit_mu(self):
        with pytest.raises(ValueError):
            KineticModel(Variant.STANDARD, 1.0, 1.0, 0.5, mu=2.0)

    def test_ml_source_needs_positive_d(self):
        with pytest.raises(ValueError):
            KineticModel(Variant.ML_SOURCE, 1.0, 1.0, 0.5, 1.0, 0.0)

    @pytest.mark.parametrize("d", [1.0, 1.0 + 1e-12])
    def test_resonance_guard(self, d):
        with pytest.raises(ResonanceError, match="ml-source-resonant"):
            KineticModel(Variant.ML_SOURCE, 1.0, 1.0, 0.5, 1.0, d)

    @pytest.mark.parametrize("field", ["N0", "c", "nu", "mu"])
    def test_positive_fields(self, field):
        kw = dict(variant=Variant.POWER_SOURCE, N0=1.0, c=1.0, nu=0.5, mu=1.5)
        kw[field] = 0.0
        with pytest.raises(ValueError):
            KineticModel(**kw)

    def test_variant_from_string(self):
        assert KineticModel("power-source", 1.0, 1.0, 0.5, 2.0).variant is Variant.POWER_SOURCE

    def test_wrong_solver(self):
        with pytest.raises(ValueError):
            kinetics.solve_ml_source(KineticModel(Variant.STANDARD, 1.0, 1.0, 0.5), GRID)


class TestForcing:
    def test_examples(self):
        f = forcing(KineticModel(Variant.STANDARD, 2.5, 1.0, 0.5), GRID)
        np.testing.assert_array_equal(f.values, 2.5)
        f = forcing(KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 0.5, 2.0), GRID)
        assert at(f, 0.5) == 0.5
        f = forcing(KineticModel(Variant.ML_SOURCE, 1.0, 2.0, 1.0, 1.0, 1.0), GRID)
        assert at(f, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-14)

    def test_gamma_normalisation(self):
        f = forcing(KineticModel(Variant.POWER_GAMMA_SOURCE, 1.0, 1.0, 0.5, 3.0), GRID)
        assert at(f, 1.0) == pytest.approx(0.5, rel=1e-15)

    def test_singular_policy(self):
        f = forcing(KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 0.5, 0.5), GRID)
        assert f.start_policy is StartPolicy.LIMIT_UNDEFINED
        assert f.exponent == -0.5
        assert at(f, 0.25) == pytest.approx(2.0)


class TestClosedForms:
    def test_standard(self):
        sol = solve(KineticModel(Variant.STANDARD, 1.0, 1.0, 1.0), GRID)
        assert sol.values[0] == 1.0
        assert at(sol, 1.0) == pytest.approx(0.3678794412, abs=1e-10)
        sol = solve(KineticModel(Variant.STANDARD, 1.0, 1.0, 0.5), GRID)
        assert at(sol, 1.0) == pytest.approx(math.e * math.erfc(1.0), rel=1e-13)

    @pytest.mark.parametrize("nu", [0.3, 0.5, 0.8, 1.0])
    def test_standard_relaxation(self, nu):
        g = TimeGrid(10.0, 400)
        v = solve(KineticModel(Variant.STANDARD, 2.0, 1.3, nu), g).values
        assert np.all(v > 0) and np.all(v <= 2.0)
        assert np.all(np.diff(v) <= 1e-15)

    def test_power_source(self):
        g = TimeGrid(2.0, 64)
        std = solve(KineticModel(Variant.STANDARD, 1.0, 1.0, 0.7), g)
        ps = solve(KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 0.7, 1.0), g)
        np.testing.assert_allclose(ps.values, std.values, rtol=0, atol=1e-12)
        sol = solve(KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 1.0, 2.0), GRID)
        assert at(sol, 1.0) == pytest.approx(1 - math.exp(-1.0), abs=1e-12)
        sol = solve(KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 0.6, 2.0), GRID)
        assert sol.values[0] == 0.0

    def test_ml_source(self):
        sol = solve(KineticModel(Variant.ML_SOURCE, 1.0, 2.0, 1.0, 1.0, 1.0), GRID)
        assert at(sol, 1.0) == pytest.approx(2 * math.exp(-2) - math.exp(-1), abs=1e-12)
        assert at(sol, 1.0) == pytest.approx(-0.0972088747, abs=1e-10)

    @pytest.mark.parametrize("nu", [0.5, 0.8, 1.5])
    def test_ml_source_closed_form(self, nu):
        c, d = 1.0, 0.4
        g = TimeGrid(2.0, 32)
        t = g.nodes
        sol = solve(KineticModel(Variant.ML_SOURCE, 1.0, c, nu, nu + 1, d), g)
        direct = (mittag_leffler(-(d**nu) * t**nu, nu) - mittag_leffler(-(c**nu) * t**nu, nu))
        direct /= c**nu - d**nu
        np.testing.assert_allclose(sol.values, direct, rtol=0, atol=1e-12)

    def test_power_gamma_source(self):
        sol = solve(KineticModel(Variant.POWER_GAMMA_SOURCE, 1.0, 1.0, 1.0, 1.0), GRID)
        assert at(sol, 1.0) == pytest.approx(math.exp(-1.0), abs=1e-12)
        sol = solve(KineticModel(Variant.POWER_GAMMA_SOURCE, 1.0, 1.0, 1.0, 2.0), GRID)
        assert at(sol, 1.0) == pytest.approx(1 - math.exp(-1.0), abs=1e-12)

    def test_resonant(self):
        sol = solve(KineticModel(Variant.ML_SOURCE_RESONANT, 1.0, 1.0, 1.0, 1.0), GRID)
        assert abs(at(sol, 1.0)) <= 1e-12
        assert at(sol, 0.5) == pytest.approx(0.3032653299, abs=1e-10)

    def test_resonant_limit(self):
        g = TimeGrid(2.0, 100)
        res = solve(KineticModel(Variant.ML_SOURCE_RESONANT, 1.0, 1.0, 0.8, 1.5), g)
        near = solve(KineticModel(Variant.ML_SOURCE, 1.0, 1.0, 0.8, 1.5, 1 + 1e-6), g)
        assert np.max(np.abs(near.values - res.values)) <= 1e-4

    def test_small_d_limit_rate(self):
        # the gap to the power-gamma family closes like d^nu
        g = TimeGrid(2.0, 100)
        fam = solve(KineticModel(Variant.POWER_GAMMA_SOURCE, 1.0, 1.0, 0.8, 1.5), g)
        gaps = []
        for d in (1e-3, 1e-4, 1e-5):
            m = solve(KineticModel(Variant.ML_SOURCE, 1.0, 1.0, 0.8, 1.5, d), g)
            gaps.append(np.max(np.abs(m.values - fam.values)))
        ratios = np.array(gaps[:-1]) / np.array(gaps[1:])
        np.testing.assert_allclose(ratios, 10**0.8, rtol=0.05)

    def test_singular_solution_policy(self):
        sol = solve(KineticModel(Variant.POWER_SOURCE, 1.0, 1.0, 0.5, 0.6), GRID)
        assert sol.start_policy is StartPolicy.LIMIT_UNDEFINED
        assert np.all(np.isfinite(sol.values[1:]))

    def test_negative_values_are_returned(self):
        sol = solve(KineticModel(Variant.ML_SOURCE, 1.0, 2.0, 1.0, 1.0, 1.0), TimeGrid(4.0, 16))
        assert np.min(sol.values) < 0
