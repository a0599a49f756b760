"""Two-parameter (viscosity eps, data scale rho) singular structure.

Three overlapping descriptions of the solution with data nu(x/rho) are
combined: the heat zone h_n(sigma, omega) built by a Duhamel recurrence in
sigma = x/rho, omega = eps t/rho^2; the normalized-Gaussian-tail bridge
R(z) = nu0- erfc(z) + nu0+ erfc(-z) in z = x/(2 sqrt(eps t)); and the inner
Riemann solution Gamma(eta, theta) of the unit-viscosity equation with pure
step data.  The composite formula is h0 - R + Gamma with the arguments
exactly in those variables; the renormalized formula convolves Gamma with
nu' and carries a better error order in mu = rho/eps.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss

from .config import ProblemConfig
from .errors import DegenerateJump, OrderTooHigh
from .flux import FluxFunction
from .initial_data import InitialData, TailExpansion, piecewise_constant_data
from .inner_riemann import burgers_step_exact
from .quadrature import erfc_paper, integrate_finite, integrate_half_line, \
    integrate_real_line
from .viscous import solve_viscous

__all__ = [
    "TwoParamState",
    "TailExpansion",
    "h0",
    "hn",
    "gamma_riemann",
    "GammaTable",
    "r000",
    "composite_u",
    "renormalized_u",
]


@dataclass(frozen=True)
class TwoParamState:
    eps: float
    rho: float

    def __post_init__(self):
        if self.eps <= 0.0 or self.rho <= 0.0:
            raise ValueError("eps and rho must be positive")
        if not self.mu < 1.0:
            raise ValueError("asymptotic regime requires mu = rho/eps < 1")

    @property
    def mu(self):
        return self.rho / self.eps


def _profile_callable(nu):
    if isinstance(nu, InitialData):
        return nu.func
    return nu


def _profile_breaks(nu):
    if isinstance(nu, InitialData):
        return sorted({*nu.jump_positions, *nu.kink_positions})
    return []


def h0(nu, sigma: float, omega: float, tol: float = 1e-10) -> float:
    """Heat evolution of the profile: Gaussian average around sigma.

    nu may be a plain callable or an InitialData; jump/kink positions of the
    latter split the integral so the trapezoid stays fast.  Profiles vary
    around sigma = 0, so the mapped origin is always a split candidate: for
    omega >> 1 the profile transition is much narrower than the Gaussian and
    would otherwise sit as an unresolved feature mid-domain.  For omega
    below 1e-14 the profile value itself is returned.
    """
    if omega < 0.0:
        raise ValueError("omega must be nonnegative")
    fn = _profile_callable(nu)
    if omega <= 1e-14:
        return float(fn(np.asarray(sigma, dtype=float)))
    root = 2.0 * np.sqrt(omega)

    def integrand(y):
        return fn(sigma + root * y) * np.exp(-y * y)

    features = set(_profile_breaks(nu)) | {0.0}
    breaks = [(b - sigma) / root for b in features]
    breaks = sorted(b for b in breaks if abs(b) < 40.0)
    if not breaks:
        val = integrate_real_line(integrand, tol=tol).value
    else:
        val = integrate_half_line(lambda s: integrand(breaks[0] - s),
                                  tol=tol).value
        val += integrate_half_line(lambda s: integrand(breaks[-1] + s),
                                   tol=tol).value
        for a, b in zip(breaks[:-1], breaks[1:]):
            val += integrate_finite(integrand, a, b, tol=tol).value
    return float(val / np.sqrt(np.pi))


def _step_profile_states(nu):
    """(left, right, jump position) when nu is a single-jump plateau profile."""
    if isinstance(nu, InitialData) and nu.variant == "piecewise_constant":
        vals = nu.params["values"]
        brks = nu.params["breakpoints"]
        if len(vals) == 2:
            return vals[0], vals[1], brks[0]
    return None


class _HeatZoneEngine:
    """Vectorized evaluation of the recurrence h_0, h_1, ... h_n.

    h_n comes from the Duhamel integral with the s-derivative moved onto the
    Gaussian kernel,
        h_n(sigma, omega) = -(2/sqrt(pi)) int_0^sqrt(omega) J_n(omega - r^2) dr,
        J_n(v) = int y exp(-y^2) E_n(sigma + 2 r y, v) dy,
    evaluated with fixed Gauss-Legendre x Gauss-Hermite nodes.  Sources:
        E_1 = phi(h_0),  E_n = sum_q phi^(q)(h_0)/q! * sum h_(n_1)...h_(n_q).
    """

    def __init__(self, nu, flux: FluxFunction, n_radial=24, n_hermite=96):
        self.flux = flux
        self.n_radial = n_radial
        self.yk, self.wk = hermgauss(n_hermite)
        step = _step_profile_states(nu)
        if step is not None:
            left, right, pos = step

            def h0_vec(s, omega):
                z = (np.asarray(s, dtype=float) - pos) / (2.0 * np.sqrt(omega))
                return right + (left - right) * erfc_paper(z)
        else:
            fn = _profile_callable(nu)
            yk, wk = self.yk, self.wk

            def h0_vec(s, omega):
                s = np.asarray(s, dtype=float)
                arg = s[..., None] + 2.0 * np.sqrt(omega) * yk
                return fn(arg) @ wk / np.sqrt(np.pi)

        self.h0_vec = h0_vec

    def source(self, n, s, v):
        """E_n on an array of s at heat time v."""
        h0v = self.h0_vec(s, max(v, 1e-300))
        if n == 1:
            return self.flux(h0v)
        h1v = self.eval(1, s, v)
        if n == 2:
            return self.flux.derivative(h0v, 1) * h1v
        h2v = self.eval(2, s, v)
        if n == 3:
            return (self.flux.derivative(h0v, 1) * h2v
                    + 0.5 * self.flux.derivative(h0v, 2) * h1v * h1v)
        raise OrderTooHigh("heat-zone recurrence implemented up to n = 3")

    def eval(self, n, s, omega):
        """h_n on an array of s (n >= 1)."""
        s = np.asarray(s, dtype=float)
        if omega <= 0.0:
            return np.zeros(s.shape)
        rk, rw = leggauss(self.n_radial)
        root = np.sqrt(omega)
        rk = 0.5 * root * (rk + 1.0)
        rw = 0.5 * root * rw
        total = np.zeros(s.shape)
        for r, w in zip(rk, rw):
            v = omega - r * r
            pts = s[..., None] + 2.0 * r * self.yk
            e_vals = self.source(n, pts, v)
            total += w * ((e_vals * self.yk) @ self.wk)
        return -(2.0 / np.sqrt(np.pi)) * total


def hn(nu, flux: FluxFunction, n: int, sigma: float, omega: float,
       n_radial: int = 24, n_hermite: int = 96) -> float:
    """n-th heat-zone coefficient at a point (1 <= n <= 3)."""
    if not 1 <= n <= 3:
        raise OrderTooHigh("n must be between 1 and 3")
    engine = _HeatZoneEngine(nu, flux, n_radial=n_radial,
                             n_hermite=n_hermite)
    return float(engine.eval(n, np.asarray([float(sigma)]), float(omega))[0])


def _tails_pair(tails):
    if isinstance(tails, TailExpansion):
        return tails.nu0_minus, tails.nu0_plus
    return float(tails[0]), float(tails[1])


class GammaTable:
    """Inner Riemann solution on a cached (eta, theta) grid, generic flux.

    The exact two-term representation covers the quadratic flux; other
    fluxes are solved once with the reference scheme (unit viscosity) and
    interpolated bicubically, with plateau values outside the grid.
    """

    def __init__(self, flux: FluxFunction, tails, eta_half_width=60.0,
                 n_eta=1201, theta_max=30.0, n_theta=400):
        from scipy.interpolate import RectBivariateSpline
        left, right = _tails_pair(tails)
        self.left, self.right = left, right
        data = piecewise_constant_data([left, right], [0.0])
        cfg = ProblemConfig(flux, data, epsilon=1.0, t0=0.0,
                            t_end=theta_max, half_width=eta_half_width)
        field = solve_viscous(cfg, n_eta, max(n_theta, 16))
        self.eta_lim = eta_half_width
        self.theta_max = theta_max
        self._spline = RectBivariateSpline(field.x(), field.t(), field.values)

    def __call__(self, eta, theta):
        eta = np.asarray(eta, dtype=float)
        theta = np.asarray(theta, dtype=float)
        e = np.clip(eta, -self.eta_lim, self.eta_lim)
        t = np.clip(theta, 0.0, self.theta_max)
        out = self._spline.ev(e, t)
        out = np.where(eta < -self.eta_lim, self.left, out)
        out = np.where(eta > self.eta_lim, self.right, out)
        return out if out.ndim else float(out)


_GAMMA_CACHE = {}


def _gamma_function(flux: FluxFunction, tails, force_numeric=False):
    left, right = _tails_pair(tails)
    if left == right:
        return lambda eta, theta: np.full_like(
            np.asarray(eta, dtype=float), left)

    if flux.kind == "burgers" and not force_numeric:
        def exact(eta, theta):
            eta = np.asarray(eta, dtype=float)
            theta = np.asarray(theta, dtype=float)
            small = theta <= 1e-14
            if np.any(small):
                stepv = np.where(eta < 0.0, left,
                                 np.where(eta > 0.0, right,
                                          0.5 * (left + right)))
                out = np.where(small, stepv,
                               burgers_step_exact(left, right, eta,
                                                  np.maximum(theta, 1e-14)))
                return out if out.ndim else float(out)
            return burgers_step_exact(left, right, eta, theta)
        return exact

    key = (id(flux), left, right)
    if key not in _GAMMA_CACHE:
        _GAMMA_CACHE[key] = GammaTable(flux, (left, right))
    return _GAMMA_CACHE[key]


def gamma_riemann(flux: FluxFunction, tails, eta: float, theta: float,
                  force_numeric: bool = False) -> float:
    """Inner Riemann solution at a point (exact route for quadratic flux)."""
    if theta < 0.0:
        raise ValueError("theta must be nonnegative")
    fn = _gamma_function(flux, tails, force_numeric=force_numeric)
    return float(fn(eta, theta))


def r000(tails, z: float):
    """Normalized-tail bridge nu0- erfc(z) + nu0+ erfc(-z)."""
    left, right = _tails_pair(tails)
    z = np.asarray(z, dtype=float)
    out = left * erfc_paper(z) + right * erfc_paper(-z)
    return out if out.ndim else float(out)


def composite_u(x: float, t: float, state: TwoParamState, nu,
                flux: FluxFunction, tails) -> float:
    """Three-chart composite: heat zone minus bridge plus inner Riemann."""
    if t <= 0.0:
        raise ValueError("t must be positive")
    eps, rho = state.eps, state.rho
    val = h0(nu, x / rho, eps * t / rho ** 2)
    val -= r000(tails, x / (2.0 * np.sqrt(eps * t)))
    val += gamma_riemann(flux, tails, x / eps, t / eps)
    return float(val)


def renormalized_u(x: float, t: float, state: TwoParamState, nu,
                   flux: FluxFunction, tails,
                   nu_prime=None, gamma_fn=None, tol: float = 1e-9) -> float:
    """Uniform leading-order formula: convolution of the inner Riemann
    solution with the profile derivative,
        (nu0+ - nu0-)^(-1) * int Gamma((x - rho s)/eps, t/eps) nu'(s) ds.
    """
    left, right = _tails_pair(tails)
    if abs(right - left) < 1e-12:
        raise DegenerateJump("tail states coincide")
    if nu_prime is None:
        if isinstance(nu, InitialData) and nu.derivative is not None:
            nu_prime = nu.derivative
        else:
            fn = _profile_callable(nu)
            nu_prime = lambda s: (fn(s + 1e-6) - fn(s - 1e-6)) / 2e-6
    if gamma_fn is None:
        gamma_fn = _gamma_function(flux, tails)
    eps, rho = state.eps, state.rho
    theta = t / eps

    def integrand(s):
        return gamma_fn((x - rho * s) / eps,
                        np.full_like(np.asarray(s, float), theta)) * nu_prime(s)

    val = integrate_real_line(integrand, tol=tol).value
    return float(val / (right - left))
