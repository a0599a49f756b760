"""Leading inner solutions around an initial jump and a shock collision.

For the quadratic flux both leading problems have closed forms through the
logarithmic substitution: the single-jump solution is a ratio of two
Gaussian-tail terms, and the merging-shock solution is a ratio of three pure
exponentials whose pairwise phase crossings are the incoming and outgoing
shock lines.  All exponents are recentered by their maximum before
exponentiation, so the formulas hold for any window that fits in floats.

Generic convex fluxes have no closed form; step_inner_w0 solves the inner
problem numerically in the co-moving frame by folding the frame speed into
the flux and running the reference solver with unit viscosity.
"""

from dataclasses import dataclass

import numpy as np

from .config import ProblemConfig
from .flux import FluxFunction
from .initial_data import step_data
from .quadrature import log_erfc_paper
from .viscous import SpaceTimeField, solve_viscous, suggest_nt

__all__ = [
    "InnerField",
    "burgers_step_exact",
    "merging_shocks_exact",
    "step_inner_w0",
    "traveling_profile",
    "two_shock_comparator",
    "one_shock_comparator",
    "outgoing_intercept",
    "matching_defect",
    "decay_rate",
]


@dataclass(frozen=True, eq=False)
class InnerField:
    """Numerically solved inner field on a (zeta, tau) grid."""

    field: SpaceTimeField
    frame_speed: float
    scenario: str
    u_minus: float
    u_plus: float

    def zeta(self):
        return self.field.x()

    def tau(self):
        return self.field.t()

    @property
    def values(self):
        return self.field.values

    def __call__(self, zeta, tau):
        return self.field.interp(zeta, tau)


def burgers_step_exact(u_minus: float, u_plus: float, zeta, tau):
    """Exact solution of w_tau + (w^2/2)_zeta = w_zetazeta with step data.

    w = (u- A- + u+ A+) / (A- + A+), where each A is the Gaussian mass of
    one initial half-line: log A_- = -u-(2 zeta - u- tau)/4 plus the
    normalized Gaussian tail log at (zeta - u- tau)/(2 sqrt(tau)), and
    mirrored for A+.  Evaluated in log space.
    """
    zeta = np.asarray(zeta, dtype=float)
    tau = np.asarray(tau, dtype=float)
    if np.any(tau <= 0.0):
        raise ValueError("tau must be positive")
    sq = 2.0 * np.sqrt(tau)
    log_am = (-u_minus * (2.0 * zeta - u_minus * tau) / 4.0
              + log_erfc_paper((zeta - u_minus * tau) / sq))
    log_ap = (-u_plus * (2.0 * zeta - u_plus * tau) / 4.0
              + log_erfc_paper(-(zeta - u_plus * tau) / sq))
    m = np.maximum(log_am, log_ap)
    am = np.exp(log_am - m)
    ap = np.exp(log_ap - m)
    out = (u_minus * am + u_plus * ap) / (am + ap)
    return out if out.ndim else float(out)


def merging_shocks_exact(u1: float, u2: float, u3: float,
                         b1: float, b2: float, zeta, tau):
    """Two shocks (u1->u2 and u2->u3) merging into one (u1->u3).

    w = sum_i u_i f_i / sum_i f_i with f_i = exp(-theta_i),
    theta_i = (u_i zeta - u_i^2 tau / 2 + c_i) / 2, and the constants c_i
    chosen so the incoming shock lines have zeta-intercepts b1 and b2.
    The exponents are recentered by their minimum before exponentiation.
    """
    if not u1 > u2 > u3:
        raise ValueError("states must satisfy u1 > u2 > u3")
    zeta = np.asarray(zeta, dtype=float)
    tau = np.asarray(tau, dtype=float)
    c1 = -(u1 - u2) * b1
    c3 = (u2 - u3) * b2
    th1 = (u1 * zeta - u1 * u1 * tau / 2.0 + c1) / 2.0
    th2 = (u2 * zeta - u2 * u2 * tau / 2.0) / 2.0
    th3 = (u3 * zeta - u3 * u3 * tau / 2.0 + c3) / 2.0
    m = np.minimum(np.minimum(th1, th2), th3)
    f1 = np.exp(-(th1 - m))
    f2 = np.exp(-(th2 - m))
    f3 = np.exp(-(th3 - m))
    out = (u1 * f1 + u2 * f2 + u3 * f3) / (f1 + f2 + f3)
    return out if out.ndim else float(out)


def traveling_profile(u_left: float, u_right: float, intercept: float,
                      zeta, tau):
    """Viscous shock profile between u_left > u_right, speed (u_l + u_r)/2."""
    zeta = np.asarray(zeta, dtype=float)
    tau = np.asarray(tau, dtype=float)
    s = 0.5 * (u_left + u_right)
    d = u_left - u_right
    out = (0.5 * (u_left + u_right)
           - 0.5 * d * np.tanh(d * (zeta - s * tau - intercept) / 4.0))
    return out if out.ndim else float(out)


def two_shock_comparator(u1, u2, u3, b1, b2):
    """Superposition of the two incoming profiles (common state subtracted)."""
    def comp(zeta, tau):
        return (traveling_profile(u1, u2, b1, zeta, tau)
                + traveling_profile(u2, u3, b2, zeta, tau) - u2)
    return comp


def outgoing_intercept(u1, u2, u3, b1, b2):
    """Intercept of the merged shock line: jump-weighted mean of b1, b2."""
    return ((u1 - u2) * b1 + (u2 - u3) * b2) / (u1 - u3)


def one_shock_comparator(u1, u2, u3, b1, b2):
    """Single merged profile along the outgoing shock line."""
    b13 = outgoing_intercept(u1, u2, u3, b1, b2)

    def comp(zeta, tau):
        return traveling_profile(u1, u3, b13, zeta, tau)
    return comp


def step_inner_w0(flux: FluxFunction, u_minus: float, u_plus: float,
                  frame_speed: float = None,
                  zeta_half_width: float = 25.0, n_zeta: int = 2001,
                  tau_end: float = 10.0, n_tau: int = None) -> InnerField:
    """Numerical leading inner solution for a single jump, generic flux.

    The frame term s'(0) w_zeta is folded into the flux (phi - s' u), which
    leaves the standard conservative form with unit viscosity; the frame
    speed defaults to the jump speed so the layer stays centered.
    """
    if not u_minus > u_plus:
        raise ValueError("entropy ordering requires u_minus > u_plus")
    if frame_speed is None:
        frame_speed = ((flux(u_plus) - flux(u_minus)) / (u_plus - u_minus))
    moving = flux.shifted(frame_speed)
    cfg = ProblemConfig(moving, step_data(u_minus, u_plus), epsilon=1.0,
                        t0=0.0, t_end=tau_end, half_width=zeta_half_width)
    if n_tau is None:
        n_tau = suggest_nt(cfg, n_zeta)
    field = solve_viscous(cfg, n_zeta, n_tau)
    return InnerField(field, frame_speed, "initial-jump", u_minus, u_plus)


def matching_defect(w, comparator, tau: float,
                    zeta_grid=None) -> float:
    """sup over zeta of |w - comparator| at fixed tau.

    Both arguments are callables of (zeta, tau); pass an InnerField
    directly for the numerical route.
    """
    if zeta_grid is None:
        zeta_grid = np.linspace(-15.0, 15.0, 1201)
    zeta_grid = np.asarray(zeta_grid, dtype=float)
    wv = w(zeta_grid, np.full_like(zeta_grid, tau))
    cv = comparator(zeta_grid, np.full_like(zeta_grid, tau))
    return float(np.max(np.abs(np.asarray(wv) - np.asarray(cv))))


def decay_rate(taus, defects):
    """Slope of log(defect) against tau (exponential-decay fit)."""
    taus = np.asarray(taus, dtype=float)
    defects = np.asarray(defects, dtype=float)
    if np.any(defects <= 0.0):
        raise ValueError("defects must be positive for a log fit")
    return float(np.polyfit(taus, np.log(defects), 1)[0])
