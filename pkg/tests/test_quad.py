"""Tests for the adaptive quadrature engines."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from chivdw.quad import (QuadResult, QuadSpec, integrate_halfline,
                         integrate_interval, integrate_pv)

SPEC = QuadSpec(rel_tol=1e-12, abs_tol=1e-300, max_evals=100_000,
                decay_rate=2.0)
SPEC_ALG = QuadSpec(rel_tol=1e-12, abs_tol=1e-300, max_evals=100_000,
                    decay_rate=0.0)


class TestQuadSpec:
    def test_defaults(self):
        spec = QuadSpec()
        assert spec.rel_tol == 1e-10
        assert spec.abs_tol == 1e-300
        assert spec.max_evals == 20000
        assert spec.decay_rate == 0.0

    @pytest.mark.parametrize("kwargs", [
        {"rel_tol": 0.0}, {"rel_tol": -1e-3}, {"max_evals": 0},
        {"decay_rate": -1.0}, {"abs_tol": -1.0},
    ])
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            QuadSpec(**kwargs)


class TestHalfline:
    def test_exponential(self):
        res = integrate_halfline(lambda x: np.exp(-2.0 * x), SPEC)
        assert res.converged
        assert res.value == pytest.approx(0.5, rel=1e-12)
        assert res.error_estimate <= max(1e-12 * 0.5, 1e-300)

    def test_cubic_exponential(self):
        res = integrate_halfline(lambda x: x**3 * np.exp(-2.0 * x), SPEC)
        assert res.converged
        assert res.value == pytest.approx(oracles.INT_X3_EXP2X, rel=1e-12)

    def test_isotropic_cc_style_kernel(self):
        # e^{-2x}(3 + 6x + 4x^2)/(8 pi^3) against a dense trapezoid oracle
        def f(x):
            return np.exp(-2.0 * x) * (3.0 + 6.0 * x + 4.0 * x**2) / (8.0 * np.pi**3)

        grid = np.linspace(0.0, 40.0, 1_000_001)
        oracle = np.trapezoid(f(grid), grid)
        res = integrate_halfline(f, SPEC)
        assert res.converged
        assert res.value == pytest.approx(oracle, rel=1e-9)

    def test_algebraic_map_without_decay_hint(self):
        res = integrate_halfline(lambda x: 1.0 / (1.0 + x**2), SPEC_ALG)
        assert res.converged
        assert res.value == pytest.approx(np.pi / 2.0, rel=1e-11)

    def test_breakpoints_accepted(self):
        res = integrate_halfline(lambda x: np.exp(-2.0 * x), SPEC,
                                 breakpoints=[0.3, 1.0, 7.5])
        assert res.value == pytest.approx(0.5, rel=1e-12)

    def test_scalar_only_integrand_wrapped(self):
        def f(x):
            return math.exp(-2.0 * x)  # rejects arrays

        res = integrate_halfline(f, SPEC)
        assert res.value == pytest.approx(0.5, rel=1e-12)

    def test_nan_raises_with_abscissa(self):
        def f(x):
            x = np.asarray(x)
            out = np.exp(-x)
            return np.where(np.abs(x - 0.5) < 0.2, np.nan, out)

        with pytest.raises(ValueError, match="non-finite"):
            integrate_halfline(f, SPEC)

    def test_budget_exhaustion_flags_unconverged(self):
        tiny = QuadSpec(rel_tol=1e-15, abs_tol=1e-300, max_evals=45,
                        decay_rate=1.0)
        res = integrate_halfline(lambda x: np.exp(-x) * np.sin(x)**2, tiny)
        assert not res.converged
        assert res.evals <= 45 + 30 * 15  # budget plus at most one round over

    def test_error_tracks_requested_tolerance(self):
        # the realised error must stay within the requested relative
        # tolerance (plus the oracle's own noise floor) at every level
        cases = [
            (lambda x: np.exp(-2.0 * x), 0.5),
            (lambda x: x**3 * np.exp(-2.0 * x), 3.0 / 8.0),
            (lambda x: np.exp(-x) / (1.0 + x**2),
             oracles.scipy_halfline(lambda x: np.exp(-x) / (1.0 + x**2))),
        ]
        for f, oracle in cases:
            errs = {}
            rel = 1e-4
            while rel >= 1e-12:
                res = integrate_halfline(
                    f, QuadSpec(rel_tol=rel, abs_tol=1e-300,
                                max_evals=200_000, decay_rate=1.0))
                assert res.converged
                err = abs(res.value - oracle)
                assert err <= rel * abs(oracle) + 1e-12
                errs[rel] = err
                rel /= 2.0
            # tightening from 1e-4 to 1e-12 must actually help (or both
            # already sit at the noise floor)
            assert errs[min(errs)] <= max(errs[max(errs)], 1e-12)

    @settings(max_examples=20, deadline=None)
    @given(a=st.floats(-3.0, 3.0), b=st.floats(-3.0, 3.0))
    def test_linearity(self, a, b):
        f = lambda x: np.exp(-2.0 * x)
        g = lambda x: x * np.exp(-1.5 * x)
        combo = lambda x: a * f(x) + b * g(x)
        spec = QuadSpec(rel_tol=1e-12, abs_tol=1e-16, max_evals=100_000,
                        decay_rate=1.0)
        rf = integrate_halfline(f, spec)
        rg = integrate_halfline(g, spec)
        rc = integrate_halfline(combo, spec)
        expected = a * rf.value + b * rg.value
        tol = (abs(a) + 1) * rf.error_estimate + (abs(b) + 1) * rg.error_estimate \
            + rc.error_estimate + 1e-14
        assert abs(rc.value - expected) <= tol


class TestInterval:
    def test_polynomial_exact(self):
        res = integrate_interval(lambda x: x**6, 0.0, 1.0, SPEC_ALG)
        assert res.value == pytest.approx(1.0 / 7.0, rel=1e-14)

    def test_oscillatory(self):
        res = integrate_interval(lambda x: np.sin(10.0 * x), 0.0, 1.0,
                                 SPEC_ALG)
        assert res.converged
        assert res.value == pytest.approx((1 - np.cos(10.0)) / 10.0,
                                          rel=1e-12)

    def test_invalid_interval(self):
        with pytest.raises(ValueError):
            integrate_interval(lambda x: x, 1.0, 0.0, SPEC_ALG)
        with pytest.raises(ValueError):
            integrate_interval(lambda x: x, 0.0, np.inf, SPEC_ALG)


class TestPrincipalValue:
    def test_odd_pole_vanishes(self):
        res = integrate_pv(lambda x: 1.0 / (x - 1.0), 1.0, 0.0, 2.0, SPEC_ALG)
        assert res.value == pytest.approx(oracles.PV_RECIP_0_2, abs=1e-12)

    def test_x_over_x_minus_one(self):
        res = integrate_pv(lambda x: x / (x - 1.0), 1.0, 0.0, 2.0, SPEC_ALG)
        assert res.converged
        assert res.value == pytest.approx(oracles.PV_X_OVER_XM1_0_2,
                                          rel=1e-12)

    def test_exponential_tail_vs_symmetric_grid_oracle(self):
        f = lambda x: np.exp(-x) / (x - 1.0)
        oracle = oracles.pv_symmetric_grid(
            lambda x: math.exp(-x) / (x - 1.0), 1.0, 0.0, 60.0)
        res = integrate_pv(f, 1.0, 0.0, 60.0, SPEC_ALG)
        assert res.converged
        assert res.value == pytest.approx(oracle, abs=1e-8)

    def test_pole_outside_rejected(self):
        with pytest.raises(ValueError):
            integrate_pv(lambda x: 1.0 / (x - 5.0), 5.0, 0.0, 2.0, SPEC_ALG)

    @settings(max_examples=15, deadline=None)
    @given(pole=st.floats(0.2, 3.0), width=st.floats(0.5, 4.0))
    def test_odd_integrand_about_pole_gives_zero(self, pole, width):
        # cos(x-p)/(x-p) is odd about the pole: its principal value vanishes
        h = lambda x: np.cos(x - pole) / (x - pole)
        res = integrate_pv(h, pole, pole - width, pole + width, SPEC_ALG)
        assert abs(res.value) <= 1e-12

    def test_result_addition(self):
        r1 = QuadResult(1.0, 1e-12, 30, True)
        r2 = QuadResult(2.0, 2e-12, 45, False)
        tot = r1 + r2
        assert tot.value == 3.0
        assert tot.error_estimate == pytest.approx(3e-12)
        assert tot.evals == 75
        assert not tot.converged


class TestKronrodConstants:
    def test_weights_sum_to_two(self):
        from chivdw.quad import _W15, _W7
        assert np.sum(_W15) == pytest.approx(2.0, abs=1e-15)
        assert np.sum(_W7) == pytest.approx(2.0, abs=1e-15)

    def test_high_degree_polynomial_single_panel(self):
        # Kronrod-15 integrates polynomials up to degree 22 exactly
        res = integrate_interval(lambda x: x**20, -1.0, 1.0, SPEC_ALG)
        assert res.value == pytest.approx(2.0 / 21.0, rel=1e-13)
