import numpy as np
import pytest
from scipy.special import gamma

from asymlab.characteristics import catastrophe_point
from asymlab.errors import InsideCusp, WindowViolation
from asymlab.flux import make_flux
from asymlab.initial_data import neg_tanh_data
from asymlab.inner_fold import (
    evaluate_fold,
    fold_far_field_defect,
    fold_normalization,
    lambda_integral,
    tau_minus_selfsimilar_check,
    tau_plus_comparator,
    w10,
    w10_residual,
    whitney_fold_root,
)


def bisect_fold_root(xi, tau, lo=-30.0, hi=30.0):
    """Independent root oracle for H^3 - tau*H + xi = 0 by pure bisection."""
    f = lambda v: v**3 - tau * v + xi
    assert f(lo) * f(hi) < 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(lo) * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


class TestLambdaIntegral:
    def test_origin_gamma_identity(self):
        exact = 2.0 ** 0.75 * gamma(0.25) / 2.0
        val, d_xi = lambda_integral(0.0, 0.0)
        assert val == pytest.approx(exact, rel=1e-11)
        assert d_xi == 0.0

    def test_even_in_xi(self):
        a, _ = lambda_integral(1.3, -0.7)
        b, _ = lambda_integral(-1.3, -0.7)
        assert a == pytest.approx(b, rel=1e-12)

    def test_derivative_odd_in_xi(self):
        _, da = lambda_integral(0.9, 2.2)
        _, db = lambda_integral(-0.9, 2.2)
        assert da == pytest.approx(-db, rel=1e-11)

    def test_heat_equation_residual(self):
        h = 1e-3
        L = lambda a, b: lambda_integral(a, b)[0]
        for (xi, tau) in ((1.0, 1.0), (-2.0, -1.5), (0.5, 3.0)):
            res = ((L(xi, tau + h) - L(xi, tau - h)) / (2 * h)
                   - (L(xi + h, tau) - 2 * L(xi, tau) + L(xi - h, tau)) / h**2)
            assert abs(res) <= 1e-6

    def test_positive_on_grid(self):
        for xi in np.linspace(-5, 5, 11):
            for tau in np.linspace(-5, 5, 11):
                val, _ = lambda_integral(xi, tau)
                assert val > 0.0


class TestW10:
    def test_center_line_zero(self):
        for tau in (-9.0, -1.0, 0.0, 2.0, 16.0):
            assert abs(w10(0.0, tau, 1.0)) <= 1e-13

    def test_prefactor_linearity(self):
        a = w10(2.0, -3.0, 1.0)
        b = w10(2.0, -3.0, 2.0)
        assert b == pytest.approx(a / 2.0, rel=1e-13)

    def test_frozen_oracle_value(self):
        # mpmath quadrature oracle: w10(10, -10, 1) = -0.88871629025640005
        assert w10(10.0, -10.0, 1.0) == pytest.approx(
            -0.8887162902564001, rel=1e-10)
        # sits near the fold root, within the first-correction scale
        h_root = bisect_fold_root(10.0, -10.0)
        assert h_root == pytest.approx(-0.9216989942046786, rel=1e-12)
        assert abs(w10(10.0, -10.0, 1.0) - h_root) < 0.04

    def test_odd_symmetry(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            xi = rng.uniform(0.1, 4.0)
            tau = rng.uniform(-4.0, 4.0)
            assert w10(-xi, tau, 1.0) == pytest.approx(
                -w10(xi, tau, 1.0), abs=1e-12)

    def test_residual_at_origin(self):
        assert abs(w10_residual(0.0, 0.0, 1.0, h=1e-2)) <= 1e-5

    def test_residual_second_order(self):
        r1 = w10_residual(1.0, -1.0, 1.0, h=1e-2)
        r2 = w10_residual(1.0, -1.0, 1.0, h=5e-3)
        assert abs(r1 / r2) == pytest.approx(4.0, rel=0.2)

    def test_residual_center_line_exact(self):
        # symmetry makes every term vanish; h large enough that the
        # quadrature roundoff (~1e-16/h^2) stays below the threshold
        for tau in (-2.0, 0.5, 3.0):
            assert abs(w10_residual(0.0, tau, 1.0, h=5e-2)) <= 1e-12


class TestWhitneyFoldRoot:
    def test_simple_roots(self):
        assert whitney_fold_root(0.0, -1.0) == 0.0
        assert whitney_fold_root(6.0, 1.0) == pytest.approx(-2.0, abs=1e-14)

    def test_inside_cusp_rejected(self):
        with pytest.raises(InsideCusp):
            whitney_fold_root(0.0, 4.0)

    def test_matches_bisection_oracle(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            tau = rng.uniform(-5.0, 5.0)
            xi = rng.uniform(-8.0, 8.0)
            if tau > 0.0 and 27.0 * xi * xi <= 4.0 * tau**3:
                continue
            assert whitney_fold_root(xi, tau) == pytest.approx(
                bisect_fold_root(xi, tau), abs=1e-13)


class TestFarFieldLaws:
    def test_ray_decay(self):
        lams = np.array([2.0, 4.0, 8.0])
        defects = np.array([fold_far_field_defect(2.0 * l**3, -l * l)
                            for l in lams])
        assert np.all(np.diff(defects) < 0.0)
        slope = np.polyfit(np.log(lams), np.log(defects), 1)[0]
        assert slope <= -1.0

    def test_symmetry_point_zero(self):
        assert fold_far_field_defect(0.0, -25.0) == 0.0

    def test_moderate_point_sane(self):
        d = fold_far_field_defect(6.0, 1.0)
        assert 0.0 < d < abs(whitney_fold_root(6.0, 1.0)) / 3.0

    def test_tau_plus_center_exact(self):
        assert tau_plus_comparator(0.0, 9.0, 1.0) == 0.0
        assert w10(0.0, 9.0, 1.0) == pytest.approx(0.0, abs=1e-13)

    def test_tau_plus_defect_decay(self):
        taus = np.array([9.0, 16.0, 25.0])
        d = []
        for t in taus:
            xi = 2.0 * 0.5 / np.sqrt(t)   # z = 1/2 fixed
            d.append(abs(w10(xi, t, 1.0) - tau_plus_comparator(xi, t, 1.0)))
        d = np.array(d)
        assert np.all(np.diff(d) < 0.0)
        assert np.polyfit(np.log(taus), np.log(d), 1)[0] <= -1.0

    def test_tau_plus_normalized_defect(self):
        xi = 2.0 * 1.0 / np.sqrt(25.0)    # z = 1
        d = abs(w10(xi, 25.0, 1.0) - tau_plus_comparator(xi, 25.0, 1.0))
        assert d / np.sqrt(25.0) <= 2e-2

    def test_tau_plus_window_guard(self):
        with pytest.raises(WindowViolation):
            tau_plus_comparator(3.0, 25.0, 1.0)
        with pytest.raises(WindowViolation):
            tau_plus_comparator(0.1, 2.0, 1.0)

    def test_self_similar_collapse(self):
        r0 = tau_minus_selfsimilar_check(0.0, [-9.0, -16.0, -25.0])
        assert np.allclose(r0["values"], 0.0, atol=1e-13)
        r = tau_minus_selfsimilar_check(0.5, [-9.0, -16.0, -25.0])
        diffs = np.abs(r["values"] - r["z0"])
        assert np.all(np.diff(diffs) < 0.0)     # monotone collapse onto Z0
        assert abs(r["values"][-1] - r["z0"]) <= 0.05 * abs(r["z0"])


class TestFoldNormalization:
    def test_tanh_catastrophe_factors(self):
        flux = make_flux("burgers")
        pt = catastrophe_point(neg_tanh_data(), flux)
        factors = fold_normalization(pt.data)
        assert factors["x_factor"] == pytest.approx(3.0 ** 0.25, rel=1e-5)
        assert factors["t_factor"] == pytest.approx(3.0 ** 0.5, rel=1e-5)
        assert factors["amplitude"] == pytest.approx(3.0 ** 0.25, rel=1e-5)

    def test_regime_tags(self):
        assert evaluate_fold(0.1, 16.0, 1.0).regime == "tau-plus"
        assert evaluate_fold(1.0, -9.0, 1.0).regime == "tau-minus"
        assert evaluate_fold(20.0, 1.0, 1.0).regime == "fold-far-field"
        assert evaluate_fold(0.1, 0.1, 1.0).regime == "core"
