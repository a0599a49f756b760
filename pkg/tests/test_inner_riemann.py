import numpy as np
import pytest

from asymlab.flux import make_flux
from asymlab.inner_riemann import (
    burgers_step_exact,
    decay_rate,
    matching_defect,
    merging_shocks_exact,
    one_shock_comparator,
    step_inner_w0,
    traveling_profile,
    two_shock_comparator,
)
from asymlab.viscous import SpaceTimeField, pde_residual

BURGERS = make_flux("burgers")


def sample_field(fn, zeta, tau):
    zz, tt = np.meshgrid(zeta, tau, indexing="ij")
    vals = fn(zz, tt)
    return SpaceTimeField(zeta[0], zeta[-1], tau[0], tau[-1],
                          len(zeta), len(tau) - 1, vals,
                          vals[0], vals[-1])


class TestBurgersStepExact:
    def test_odd_symmetry_at_center(self):
        for tau in (0.01, 1.0, 17.0, 300.0):
            assert burgers_step_exact(1.0, -1.0, 0.0, tau) == pytest.approx(
                0.0, abs=1e-14)

    def test_travelling_wave_limit(self):
        zeta = np.linspace(-8.0, 8.0, 81)
        w = burgers_step_exact(1.0, -1.0, zeta, np.full_like(zeta, 50.0))
        assert np.max(np.abs(w - (-np.tanh(zeta / 2.0)))) < 1e-6

    def test_half_speed_front(self):
        # u=(1,0): front at zeta = tau/2 instantly, value 1/2 on the line
        for tau in (5.0, 40.0):
            assert burgers_step_exact(1.0, 0.0, tau / 2.0, tau) == \
                pytest.approx(0.5, abs=1e-2)
        assert burgers_step_exact(1.0, 0.0, -30.0, 10.0) == pytest.approx(
            1.0, abs=1e-10)

    def test_residual_discretization_limited(self):
        zeta = np.linspace(-6.0, 6.0, 241)
        tau = np.linspace(1.0, 5.0, 161)
        f = sample_field(lambda z, t: burgers_step_exact(1.0, -1.0, z, t),
                         zeta, tau)
        r = pde_residual(f, BURGERS, 1.0)
        assert float(np.max(np.abs(r.values))) <= 1e-4

    def test_band_and_far_fields(self):
        zeta = np.linspace(-30.0, 30.0, 301)
        for tau in (0.5, 5.0, 20.0):
            w = burgers_step_exact(1.0, -1.0, zeta, np.full_like(zeta, tau))
            assert np.all(w <= 1.0 + 1e-12) and np.all(w >= -1.0 - 1e-12)
            assert abs(w[0] - 1.0) < 1e-10 and abs(w[-1] + 1.0) < 1e-10


class TestMergingShocksExact:
    def test_odd_symmetry(self):
        for tau in (-40.0, -3.0, 0.0, 3.0, 40.0):
            assert merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, 0.0, tau) \
                == pytest.approx(0.0, abs=1e-14)

    def test_two_shock_superposition_before_merge(self):
        zeta = np.linspace(-30.0, 30.0, 601)
        tau = -40.0
        w = merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, zeta,
                                 np.full_like(zeta, tau))
        comp = two_shock_comparator(1.0, 0.0, -1.0, 0.0, 0.0)(
            zeta, np.full_like(zeta, tau))
        assert np.max(np.abs(w - comp)) < 1e-6

    def test_single_shock_after_merge(self):
        # middle-state influence decays like exp(-tau/4); gone by tau ~ 60
        zeta = np.linspace(-30.0, 30.0, 601)
        tau = 60.0
        w = merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, zeta,
                                 np.full_like(zeta, tau))
        profile = -np.tanh(zeta / 2.0)
        assert np.max(np.abs(w - profile)) < 1e-6

    def test_inner_equation_residual(self):
        rng = np.random.default_rng(5)
        pts_z = rng.uniform(-15.0, 15.0, size=60)
        pts_t = rng.uniform(-15.0, 15.0, size=60)
        maxima = {}
        for h in (1e-2, 5e-3):
            res = []
            for z0, t0 in zip(pts_z, pts_t):
                w = lambda z, t: merging_shocks_exact(
                    1.0, 0.0, -1.0, 0.0, 0.0, z, t)
                w_t = (w(z0, t0 + h) - w(z0, t0 - h)) / (2 * h)
                w_z = (w(z0 + h, t0) - w(z0 - h, t0)) / (2 * h)
                w_zz = (w(z0 + h, t0) - 2 * w(z0, t0) + w(z0 - h, t0)) / h**2
                res.append(abs(w_t + w(z0, t0) * w_z - w_zz))
            maxima[h] = max(res)
        assert maxima[5e-3] <= 1e-6
        assert maxima[1e-2] / maxima[5e-3] == pytest.approx(4.0, rel=0.5)

    def test_offsets_move_incoming_shocks(self):
        # shock between u1, u2 crosses value (u1+u2)/2 at zeta = s12*tau + b1
        tau, b1, b2 = -60.0, 1.5, -0.7
        s12 = 0.5
        v = merging_shocks_exact(1.0, 0.0, -1.0, b1, b2,
                                 s12 * tau + b1, tau)
        assert v == pytest.approx(0.5, abs=1e-6)

    def test_band_and_far_fields(self):
        # unit states approach the plateaus like exp(-|zeta|/2): the 1e-10
        # far-field check needs |zeta| >= 60
        zeta = np.linspace(-60.0, 60.0, 241)
        for tau in (-12.0, 0.0, 12.0):
            w = merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, zeta,
                                     np.full_like(zeta, tau))
            assert np.all(w <= 1.0 + 1e-8) and np.all(w >= -1.0 - 1e-8)
            assert abs(w[0] - 1.0) < 1e-10 and abs(w[-1] + 1.0) < 1e-10

    def test_entropy_ordering_required(self):
        with pytest.raises(ValueError):
            merging_shocks_exact(-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0)


class TestMatchingDefect:
    def test_self_comparison_zero(self):
        w = lambda z, t: merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, z, t)
        assert matching_defect(w, w, tau=-5.0) == 0.0

    def test_exponential_approach_to_two_shock(self):
        w = lambda z, t: merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, z, t)
        comp = two_shock_comparator(1.0, 0.0, -1.0, 0.0, 0.0)
        taus = [-10.0, -20.0, -40.0]
        defects = [matching_defect(w, comp, tau, np.linspace(-40, 40, 1601))
                   for tau in taus]
        assert defects[0] > defects[1] > defects[2] > 0.0
        assert decay_rate(taus, defects) > 0.0

    def test_exponential_approach_to_one_shock(self):
        w = lambda z, t: merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, z, t)
        comp = one_shock_comparator(1.0, 0.0, -1.0, 0.0, 0.0)
        taus = [10.0, 20.0, 40.0]
        defects = [matching_defect(w, comp, tau, np.linspace(-40, 40, 1601))
                   for tau in taus]
        assert defects[0] > defects[1] > defects[2] > 0.0
        assert decay_rate(taus, defects) < 0.0


class TestStepInnerW0:
    def test_relaxes_to_profile(self):
        inner = step_inner_w0(BURGERS, 1.0, -1.0, tau_end=20.0,
                              zeta_half_width=25.0, n_zeta=1001)
        zeta = inner.zeta()
        keep = np.abs(zeta) <= 10.0
        w_end = inner.values[keep, -1]
        assert np.max(np.abs(w_end - (-np.tanh(zeta[keep] / 2.0)))) <= 1e-3

    def test_conservation_bookkeeping(self):
        inner = step_inner_w0(BURGERS, 1.0, -1.0, tau_end=5.0,
                              zeta_half_width=20.0, n_zeta=801)
        f = inner.field
        drift = np.abs(f.mass - f.mass[0] - f.boundary_influx)
        assert float(drift.max()) <= 1e-8

    def test_matches_exact_formula(self):
        inner = step_inner_w0(BURGERS, 1.0, -1.0, tau_end=10.0,
                              zeta_half_width=25.0, n_zeta=4001)
        zeta = inner.zeta()
        keep = np.abs(zeta) <= 10.0
        taus = inner.tau()
        cols = [k for k, t in enumerate(taus) if t >= 1.0]
        worst = 0.0
        for k in cols[:: max(1, len(cols) // 40)]:
            exact = burgers_step_exact(1.0, -1.0, zeta[keep], taus[k])
            worst = max(worst, float(np.max(np.abs(
                inner.values[keep, k] - exact))))
        assert worst <= 1e-4

    def test_generic_flux_band(self):
        cubic = make_flux("polynomial", [0.0, 0.0, 0.5, 1.0 / 12.0],
                          interval=(-1.5, 1.5))
        inner = step_inner_w0(cubic, 1.0, -1.0, tau_end=4.0,
                              zeta_half_width=20.0, n_zeta=801)
        assert float(inner.values.max()) <= 1.0 + 1e-8
        assert float(inner.values.min()) >= -1.0 - 1e-8
        # frame speed defaults to the jump speed: layer stays centered
        mid = inner(0.0, 4.0)
        assert abs(mid - 0.5 * (1.0 + -1.0)) < 0.2