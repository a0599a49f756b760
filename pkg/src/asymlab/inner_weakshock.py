"""Transition of a weak discontinuity into a shock: leading inner terms.

The corner family -(x + a x^2) * Theta(-x) breaks down at t = 1 (the
one-sided slope at the corner is -1 for every a), and near the transition
point the solution is governed by a half-line integral with a cubic
exponent,
    P(xi, tau) = int_0^inf exp(-(4b/3) s^3 + tau s^2 - xi s) ds,
with b = a - phi'''(0)/2 packing the data and flux asymmetry.  The leading
coefficient is -2 P_xi / P and the next one sqrt(pi) P_xi / P^2.
"""

from dataclasses import dataclass

import numpy as np

from .config import ProblemConfig
from .errors import BNonPositive, NotNormalized
from .flux import FluxFunction
from .initial_data import weak_discontinuity_data
from .quadrature import integrate_half_line

__all__ = [
    "WeakShockParams",
    "phi_integral",
    "w20",
    "w30",
    "weakshock_params",
    "weakshock_scenario",
    "weakshock_transition",
    "weakshock_theta",
]

_QUAD_TOL = 1e-12
_TRANSITION_TIME = 1.0   # 1/|slope at the corner|, slope is -1 by scaling


@dataclass(frozen=True)
class WeakShockParams:
    a: float
    b: float
    phi3_at_0: float

    def __post_init__(self):
        if self.a <= 0.0:
            raise ValueError("a must be positive")
        if not self.b > 0.0:
            raise BNonPositive(
                f"b = a - phi'''(0)/2 = {self.b:.6g} must be positive")


def weakshock_theta(xi: float, tau: float) -> float:
    """Self-similar variable of the pre-transition matching zone."""
    if tau >= 0.0:
        raise ValueError("theta is defined for tau < 0")
    return xi / (2.0 * np.sqrt(-tau))


def _cubic_exponent(s, xi, tau, b):
    return -(4.0 * b / 3.0) * s**3 + tau * s * s - xi * s


def _phi_scaled(xi, tau, b):
    """(I0, I1, g_max): P = I0 e^(g_max), P_xi = I1 e^(g_max)."""
    if b <= 0.0:
        raise BNonPositive("cubic decay requires b > 0")
    xi = float(xi)
    tau = float(tau)
    # interior maximum of the exponent, if any: root of -4b s^2 + 2 tau s - xi
    disc = tau * tau - 4.0 * b * xi
    g_max = 0.0
    scale = 1.0
    if disc > 0.0:
        s_peak = (tau + np.sqrt(disc)) / (4.0 * b)
        if s_peak > 0.0:
            g_peak = float(_cubic_exponent(s_peak, xi, tau, b))
            if g_peak > 0.0:
                g_max = g_peak
                scale = float(np.e * s_peak)

    def f0(s):
        return np.exp(_cubic_exponent(s, xi, tau, b) - g_max)

    def f1(s):
        return -s * np.exp(_cubic_exponent(s, xi, tau, b) - g_max)

    i0 = integrate_half_line(f0, tol=_QUAD_TOL, scale=scale)
    i1 = integrate_half_line(f1, tol=_QUAD_TOL, scale=scale)
    return i0.value, i1.value, g_max


def phi_integral(xi: float, tau: float, b: float):
    """(value, d/dxi) of the cubic-exponent half-line integral.

    The derivative integrates the differentiated integrand (factor -s);
    both are positive/negative respectively for every argument.
    """
    i0, i1, g_max = _phi_scaled(xi, tau, b)
    s = np.exp(g_max)
    return i0 * s, i1 * s


def w20(xi: float, tau: float, b: float) -> float:
    """Leading transition coefficient -2 P_xi / P (strictly positive)."""
    i0, i1, _ = _phi_scaled(xi, tau, b)
    return -2.0 * i1 / i0


def w30(xi: float, tau: float, b: float) -> float:
    """Second transition coefficient sqrt(pi) P_xi / P^2 (strictly negative)."""
    i0, i1, g_max = _phi_scaled(xi, tau, b)
    return float(np.sqrt(np.pi) * i1 * np.exp(-g_max) / (i0 * i0))


def weakshock_params(a: float, flux: FluxFunction) -> WeakShockParams:
    """Pack a and the flux's cubic coefficient into b = a - phi'''(0)/2."""
    if not flux.is_normalized():
        raise NotNormalized(
            "transition formulas assume phi(0) = phi'(0) = 0, phi''(0) = 1")
    phi3 = float(flux.derivative(0.0, 3))
    return WeakShockParams(a=float(a), b=float(a) - phi3 / 2.0,
                           phi3_at_0=phi3)


def weakshock_transition():
    """Location of the corner-to-shock transition for this family: the
    one-sided slope at the corner is -1, so breakdown happens at t = 1
    on the (stationary) corner characteristic x = 0."""
    return 0.0, _TRANSITION_TIME


def weakshock_scenario(a: float, flux: FluxFunction, eps: float,
                       tau_max: float = 3.0,
                       half_width: float = 2.5) -> ProblemConfig:
    """Ready-to-solve configuration whose limit solution carries a weak
    discontinuity along x = 0 that becomes a shock at t = 1.

    The data grows toward the left cut, where characteristics leave the
    domain; the far-field drift guard is therefore disarmed.
    """
    weakshock_params(a, flux)   # validates normalization and b > 0
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    x_star, t_star = weakshock_transition()
    t_end = t_star + tau_max * eps ** (1.0 / 3.0)
    return ProblemConfig(flux, weak_discontinuity_data(a), epsilon=eps,
                         t0=0.0, t_end=t_end, half_width=half_width,
                         enforce_far_field=False)
