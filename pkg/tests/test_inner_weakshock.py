import numpy as np
import pytest
from scipy.special import gamma

from asymlab.errors import BNonPositive, NotNormalized
from asymlab.flux import make_flux
from asymlab.inner_weakshock import (
    phi_integral,
    w20,
    w30,
    weakshock_params,
    weakshock_scenario,
    weakshock_theta,
    weakshock_transition,
)

BURGERS = make_flux("burgers")


def trapezoid_oracle(f, n=2_000_001, hi=30.0):
    s = np.linspace(0.0, hi, n)
    return np.trapezoid(f(s), s)


class TestPhiIntegral:
    def test_gamma_identities_at_origin(self):
        val, d_xi = phi_integral(0.0, 0.0, 0.75)
        assert val == pytest.approx(gamma(1.0 / 3.0) / 3.0, rel=1e-11)
        assert d_xi == pytest.approx(-gamma(2.0 / 3.0) / 3.0, rel=1e-11)

    def test_against_refinement_oracle(self):
        for (xi, tau, b) in ((1.0, -1.0, 1.0), (-2.0, 2.0, 0.5),
                             (0.3, 1.2, 0.75)):
            val, d_xi = phi_integral(xi, tau, b)
            f = lambda s: np.exp(-(4 * b / 3) * s**3 + tau * s * s - xi * s)
            assert val == pytest.approx(trapezoid_oracle(f), rel=1e-8)
            g = lambda s: -s * f(s)
            assert d_xi == pytest.approx(trapezoid_oracle(g), rel=1e-8)

    def test_monotone_in_xi(self):
        assert phi_integral(1.0, 0.0, 1.0)[0] < phi_integral(0.0, 0.0, 1.0)[0]
        _, d = phi_integral(0.5, -0.5, 1.0)
        assert d < 0.0

    def test_heat_identity_spec_point(self):
        h = 1e-3
        P = lambda a, c: phi_integral(a, c, 1.0)[0]
        res = ((P(1.0, -1.0 + h) - P(1.0, -1.0 - h)) / (2 * h)
               - (P(1.0 + h, -1.0) - 2 * P(1.0, -1.0)
                  + P(1.0 - h, -1.0)) / h**2)
        assert abs(res) <= 1e-6

    def test_heat_identity_window(self):
        # the integral grows like exp(tau^3/3b^2) toward the (-3, 3) corner,
        # so the residual is checked relative to the second-derivative scale
        h = 1.25e-4
        for b in (0.5, 0.75, 1.0):
            for (xi, tau) in ((1.0, -1.0), (0.0, 0.5), (-1.5, 2.0),
                              (3.0, -3.0), (-3.0, 3.0)):
                P = lambda a, c: phi_integral(a, c, b)[0]
                xx = (P(xi + h, tau) - 2 * P(xi, tau)
                      + P(xi - h, tau)) / h**2
                res = (P(xi, tau + h) - P(xi, tau - h)) / (2 * h) - xx
                assert abs(res) <= 1e-6 * max(1.0, abs(xx))

    def test_scale_coherence(self):
        lam = 2.0
        for (xi, tau, b) in ((0.7, -1.3, 0.8), (-0.4, 0.9, 0.5)):
            lhs = phi_integral(xi, tau, b)[0]
            rhs = lam * phi_integral(lam * xi, lam**2 * tau, lam**3 * b)[0]
            assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_positive_b_required(self):
        with pytest.raises(BNonPositive):
            phi_integral(0.0, 0.0, 0.0)


class TestW20:
    def test_origin_value(self):
        # 2 * (Gamma(2/3)/3) / (Gamma(1/3)/3), frozen from the Gamma oracle
        assert w20(0.0, 0.0, 0.75) == pytest.approx(1.0109361763121786,
                                                    rel=1e-10)

    def test_positive_everywhere(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            xi = rng.uniform(-3.0, 3.0)
            tau = rng.uniform(-3.0, 3.0)
            b = rng.choice([0.5, 0.75, 1.0])
            assert w20(xi, tau, b) > 0.0

    def test_burgers_equation_residual(self):
        h = 1e-2
        w = lambda a, c: w20(a, c, 1.0)
        for (xi, tau) in ((1.0, -2.0), (0.5, 1.0)):
            w_t = (w(xi, tau + h) - w(xi, tau - h)) / (2 * h)
            w_x = (w(xi + h, tau) - w(xi - h, tau)) / (2 * h)
            w_xx = (w(xi + h, tau) - 2 * w(xi, tau) + w(xi - h, tau)) / h**2
            assert abs(w_t + w(xi, tau) * w_x - w_xx) <= 1e-5

    def test_residual_second_order(self):
        def res(h):
            w = lambda a, c: w20(a, c, 1.0)
            xi, tau = 1.0, -2.0
            w_t = (w(xi, tau + h) - w(xi, tau - h)) / (2 * h)
            w_x = (w(xi + h, tau) - w(xi - h, tau)) / (2 * h)
            w_xx = (w(xi + h, tau) - 2 * w(xi, tau) + w(xi - h, tau)) / h**2
            return abs(w_t + w(xi, tau) * w_x - w_xx)

        assert res(2e-2) / res(1e-2) == pytest.approx(4.0, rel=0.3)

    def test_late_time_front_height(self):
        # behind the forming shock the level grows like tau / b
        assert w20(0.0, 20.0, 1.0) == pytest.approx(20.0, rel=1e-2)

    def test_early_time_decay(self):
        # pre-transition the coefficient shrinks like |tau|^(-1/2)
        vals = [abs(w20(1.0, tau, 1.0)) for tau in (-10.0, -40.0, -160.0)]
        assert vals[0] > vals[1] > vals[2]
        slope = np.polyfit(np.log([10.0, 40.0, 160.0]), np.log(vals), 1)[0]
        assert slope == pytest.approx(-0.5, abs=0.1)


class TestW30:
    def test_origin_value(self):
        assert w30(0.0, 0.0, 0.75) == pytest.approx(-1.0032916184019662,
                                                    rel=1e-10)

    def test_negative_everywhere(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            xi = rng.uniform(-3.0, 3.0)
            tau = rng.uniform(-3.0, 3.0)
            b = rng.choice([0.5, 0.75, 1.0])
            assert w30(xi, tau, b) < 0.0

    def test_linearized_equation_residual(self):
        h = 1e-2
        b = 1.0
        for (xi, tau) in ((0.5, -1.0), (1.0, 0.5)):
            v = lambda a, c: w30(a, c, b)
            prod = lambda a, c: w20(a, c, b) * w30(a, c, b)
            v_t = (v(xi, tau + h) - v(xi, tau - h)) / (2 * h)
            p_x = (prod(xi + h, tau) - prod(xi - h, tau)) / (2 * h)
            v_xx = (v(xi + h, tau) - 2 * v(xi, tau) + v(xi - h, tau)) / h**2
            assert abs(v_t + p_x - v_xx) <= 1e-5


class TestScenario:
    def test_b_values(self):
        assert weakshock_params(1.0, BURGERS).b == pytest.approx(1.0)
        cubic = make_flux("polynomial", [0.0, 0.0, 0.5, 1.0 / 6.0],
                          interval=(-1.0, 1.0))
        assert weakshock_params(1.0, cubic).b == pytest.approx(0.5)

    def test_b_nonpositive_rejected(self):
        strong_cubic = make_flux("polynomial", [0.0, 0.0, 0.5, 1.0 / 3.0],
                                 interval=(-0.4, 0.4))
        with pytest.raises(BNonPositive):
            weakshock_params(1.0, strong_cubic)

    def test_normalization_required(self):
        doubled = make_flux("polynomial", [0.0, 0.0, 1.0],
                            interval=(-1.0, 1.0))
        with pytest.raises(NotNormalized):
            weakshock_params(1.0, doubled)

    def test_scenario_config(self):
        cfg = weakshock_scenario(1.0, BURGERS, eps=1e-2)
        assert cfg.epsilon == 1e-2
        assert cfg.t_end > 1.0
        assert cfg.initial.variant == "weak_discontinuity"
        x_star, t_star = weakshock_transition()
        assert (x_star, t_star) == (0.0, 1.0)

    def test_theta_helper(self):
        assert weakshock_theta(2.0, -4.0) == pytest.approx(0.5)
        with pytest.raises(ValueError):
            weakshock_theta(1.0, 0.5)


class TestFullEquationLink:
    def test_leading_term_convergence(self):
        # viscous solution at (eps^(2/3) xi, 1 + eps^(1/3) tau) against
        # eps^(1/3) w20; next correction is eps^(1/2) w30, so the sup error
        # over a compact window decays with order about 1/2
        from asymlab.hopf import cole_hopf_burgers
        from asymlab.initial_data import weak_discontinuity_data
        q = weak_discontinuity_data(a=1.0)
        eps_list = [1e-2, 2.5e-3]
        errs = []
        for eps in eps_list:
            worst = 0.0
            for xi in np.linspace(-2.0, 2.0, 7):
                for tau in np.linspace(-1.5, 1.5, 5):
                    x = xi * eps ** (2.0 / 3.0)
                    t = 1.0 + tau * eps ** (1.0 / 3.0)
                    u = cole_hopf_burgers(q, x, t, eps)
                    worst = max(worst, abs(u - eps ** (1.0 / 3.0)
                                           * w20(xi, tau, 1.0)))
            errs.append(worst)
        order = np.log(errs[0] / errs[1]) / np.log(eps_list[0] / eps_list[1])
        assert order >= 0.4
