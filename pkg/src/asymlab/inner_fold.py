"""Leading inner structure of a gradient catastrophe.

Everything is built from one heat-kernel-type integral with a quartic
exponent,
    L(xi, tau) = int exp(-(z^4 - 2 z^2 tau + 4 z xi)/8) dz,
whose logarithmic xi-derivative gives the leading inner coefficient.  The
exponent's critical points are the roots of the same cubic that defines the
Whitney fold root H (H^3 - tau H + xi = 0), which provides the recentering
shift and the log-scale subtraction that keep the quadrature overflow-free
far along the caustic rays.

The one-parameter stretching freedom of the inner problem is fixed by the
local cubic of the data (fold_normalization); the canonical formulas here
assume the normalized cubic, and scenario code maps physical coordinates
through those factors.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InsideCusp, WindowViolation
from .quadrature import integrate_half_line, integrate_real_line

__all__ = [
    "FoldEvaluation",
    "lambda_integral",
    "w10",
    "w10_residual",
    "whitney_fold_root",
    "fold_far_field_defect",
    "tau_plus_comparator",
    "tau_minus_selfsimilar_check",
    "fold_normalization",
    "evaluate_fold",
]

_QUAD_TOL = 1e-12


@dataclass(frozen=True)
class FoldEvaluation:
    xi: float
    tau: float
    lambda_value: float
    lambda_xi: float
    w10: float
    regime: str


def _exponent(z, xi, tau):
    return -(z**4 - 2.0 * z * z * tau + 4.0 * z * xi) / 8.0


def _critical_points(xi, tau):
    """Real roots of z^3 - tau z + xi = 0 (stationary exponent points)."""
    roots = np.roots([1.0, 0.0, -tau, xi])
    real = roots[np.abs(roots.imag) < 1e-9 * (1.0 + np.abs(roots.real))].real
    return np.sort(real)


def _lambda_scaled(xi, tau):
    """(I0, I1, g_max) with L = I0 e^(g_max), dL/dxi = I1 e^(g_max).

    For tau > 0 the exponent is bimodal (two maxima flanking the middle
    critical point); the integral is then split at the interior minimum and
    each unimodal piece is integrated over its own half line, which keeps
    the tail truncation from stopping inside the valley between the peaks.
    """
    xi = float(xi)
    tau = float(tau)
    crit = _critical_points(xi, tau)
    g_max = float(np.max(_exponent(crit, xi, tau))) if crit.size else 0.0

    def f0(z):
        return np.exp(_exponent(z, xi, tau) - g_max)

    def f1(z):
        return -z / 2.0 * np.exp(_exponent(z, xi, tau) - g_max)

    if crit.size == 3 and crit[2] - crit[0] > 1e-8:
        z_split = float(crit[1])
        left_scale = max(np.e * (z_split - float(crit[0])), 1e-2)
        right_scale = max(np.e * (float(crit[2]) - z_split), 1e-2)
        i0 = i1 = 0.0
        for f, acc in ((f0, 0), (f1, 1)):
            left = integrate_half_line(lambda y: f(z_split - y),
                                       tol=_QUAD_TOL, scale=left_scale)
            right = integrate_half_line(lambda y: f(z_split + y),
                                        tol=_QUAD_TOL, scale=right_scale)
            if acc == 0:
                i0 = left.value + right.value
            else:
                i1 = left.value + right.value
        return i0, i1, g_max

    z_c = 0.0 if xi == 0.0 else float(crit[np.argmax(_exponent(crit, xi, tau))])
    i0 = integrate_real_line(lambda v: f0(z_c + v), tol=_QUAD_TOL)
    i1 = integrate_real_line(lambda v: f1(z_c + v), tol=_QUAD_TOL)
    return i0.value, i1.value, g_max


def lambda_integral(xi: float, tau: float):
    """(value, d/dxi) of the quartic-exponent integral.

    The derivative integrates the differentiated integrand (factor -z/2),
    never finite differences.  Values overflow floats once the scale
    exponent passes ~700; ratio-based consumers use the scaled internals.
    """
    i0, i1, g_max = _lambda_scaled(xi, tau)
    scale = np.exp(g_max)
    return i0 * scale, i1 * scale


def w10(xi: float, tau: float, phi2_at_0: float) -> float:
    """Leading inner coefficient: -2 L_xi / (phi''(0) L)."""
    if phi2_at_0 <= 0.0:
        raise ValueError("phi2_at_0 must be positive")
    i0, i1, _ = _lambda_scaled(xi, tau)
    return -2.0 * i1 / (phi2_at_0 * i0)


def w10_residual(xi: float, tau: float, phi2_at_0: float,
                 h: float = 1e-2) -> float:
    """Central-difference residual of w_tau + phi2 w w_xi - w_xixi at a point."""
    if not 1e-4 <= h <= 1e-1:
        raise ValueError("h must lie in [1e-4, 1e-1]")
    w = lambda a, b: w10(a, b, phi2_at_0)
    w_t = (w(xi, tau + h) - w(xi, tau - h)) / (2.0 * h)
    w_x = (w(xi + h, tau) - w(xi - h, tau)) / (2.0 * h)
    w_xx = (w(xi + h, tau) - 2.0 * w(xi, tau) + w(xi - h, tau)) / h**2
    return float(w_t + phi2_at_0 * w(xi, tau) * w_x - w_xx)


def whitney_fold_root(xi: float, tau: float) -> float:
    """The unique real root of H^3 - tau H + xi = 0 outside the cusp.

    Inside the cusp region 27 xi^2 < 4 tau^3 there are three real roots and
    no canonical branch; the query raises InsideCusp.
    """
    xi = float(xi)
    tau = float(tau)
    if tau > 0.0 and 27.0 * xi * xi <= 4.0 * tau**3:
        raise InsideCusp(
            f"(xi, tau) = ({xi}, {tau}) has 27 xi^2 <= 4 tau^3")
    # Cardano: p = -tau, q = xi; single real root since the discriminant
    # xi^2/4 - tau^3/27 is positive here
    disc = xi * xi / 4.0 - tau**3 / 27.0
    s = np.sqrt(disc)
    h = np.cbrt(-xi / 2.0 + s) + np.cbrt(-xi / 2.0 - s)

    def f(v):
        return v**3 - tau * v + xi

    def fp(v):
        return 3.0 * v * v - tau

    scale = max(1.0, abs(h))
    for _ in range(60):
        step = f(h) / fp(h)
        h -= step
        if abs(step) <= 1e-15 * scale:
            break
    return float(h)


def fold_far_field_defect(xi: float, tau: float) -> float:
    """|phi''(0) w10 - H| where the fold law applies (3H^2 - tau >= 4)."""
    h_root = whitney_fold_root(xi, tau)
    if 3.0 * h_root * h_root - tau < 4.0:
        raise WindowViolation("3H^2 - tau < 4: too close to the caustic")
    return abs(w10(xi, tau, 1.0) - h_root)


def tau_plus_comparator(xi: float, tau: float, phi2_at_0: float) -> float:
    """Late-time law sqrt(tau) * (-tanh(z)) / phi''(0), z = xi sqrt(tau)/2."""
    if tau < 4.0:
        raise WindowViolation("tau-plus law needs tau >= 4")
    if abs(xi) * np.sqrt(tau) >= tau**0.4:
        raise WindowViolation("|xi| sqrt(tau) outside the validity window")
    z = xi * np.sqrt(tau) / 2.0
    return float(np.sqrt(tau) * (-np.tanh(z)) / phi2_at_0)


def tau_minus_selfsimilar_check(theta: float, tau_list):
    """Collapse test of w10 onto the early-time self-similar profile.

    Evaluates w10(theta |tau|^(3/2), tau) / |tau|^(1/2) along tau_list and
    reports the values, their spread, and the limiting profile value
    Z0(theta), the real root of Z^3 + Z + theta = 0.
    """
    tau_list = [float(t) for t in tau_list]
    if len(tau_list) < 3 or any(t > -4.0 for t in tau_list):
        raise ValueError("need at least 3 tau values, all <= -4")
    values = np.array([
        w10(theta * abs(t) ** 1.5, t, 1.0) / np.sqrt(abs(t))
        for t in tau_list])
    z0 = whitney_fold_root(theta, -1.0)
    return {"values": values,
            "spread": float(values.max() - values.min()),
            "z0": float(z0)}


def fold_normalization(local_data: dict):
    """Stretching factors mapping a physical catastrophe onto the
    normalized fold cubic.

    From the local data of the characteristic map (q' < 0 at the critical
    foot point, phi'' > 0, cubic coefficient c3 > 0 with the local form
    c3 d^3/6 - d dt/T - x = 0) the factor is
        beta = (-6 q'^3 phi2^3 / c3)^(1/4),
    and the inner comparator is beta eps^(1/4) w10(beta xi, beta^2 tau).
    """
    q_slope = local_data["q_slope"]
    phi2 = local_data["phi2"]
    c3 = local_data["c3"]
    radicand = -6.0 * q_slope**3 * phi2**3 / c3
    if radicand <= 0.0:
        raise ValueError("degenerate fold: need q' < 0 and c3 > 0")
    beta = radicand ** 0.25
    return {"x_factor": beta, "t_factor": beta * beta, "amplitude": beta}


def evaluate_fold(xi: float, tau: float, phi2_at_0: float) -> FoldEvaluation:
    lam, lam_xi = lambda_integral(xi, tau)
    w = w10(xi, tau, phi2_at_0)
    regime = "core"
    if tau >= 4.0 and abs(xi) * np.sqrt(tau) < tau**0.4:
        regime = "tau-plus"
    elif tau <= -4.0:
        regime = "tau-minus"
    else:
        try:
            h_root = whitney_fold_root(xi, tau)
            if 3.0 * h_root * h_root - tau >= 4.0:
                regime = "fold-far-field"
        except InsideCusp:
            regime = "core"
    return FoldEvaluation(xi, tau, lam, lam_xi, w, regime)
