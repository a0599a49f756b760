"""Initial data variants: smooth profiles, steps with one-sided expansions,
the weak-discontinuity family, scaled profiles nu(x/rho), and piecewise
constants for multi-shock scenarios.

Each variant carries, when available in closed form, its antiderivative
(consumed by the Hopf integral) and derivative (consumed by catastrophe
detection and the renormalized convolution); a spline-backed numeric
antiderivative is the fallback for black-box smooth profiles.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "InitialData",
    "TailExpansion",
    "smooth_data",
    "step_data",
    "weak_discontinuity_data",
    "scaled_data",
    "piecewise_constant_data",
    "neg_tanh_data",
    "eval_initial",
    "log_cosh",
]


def log_cosh(x):
    """log(cosh(x)) without overflow."""
    x = np.asarray(x, dtype=float)
    out = np.abs(x) + np.log1p(np.exp(-2.0 * np.abs(x))) - np.log(2.0)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class TailExpansion:
    """Algebraic tail data of a scaled profile: nu(sigma) ~ sum nu_n/sigma^n."""

    nu0_minus: float
    nu0_plus: float
    higher: tuple = ()

    def __post_init__(self):
        if not self.nu0_minus > self.nu0_plus:
            raise ValueError("tail ordering requires nu0_minus > nu0_plus")


class _NumericAntiderivative:
    """Lazy cumulative integral of q on [-radius, radius], spline-evaluated,
    extended linearly with the far-field slopes outside."""

    def __init__(self, func, far_left, far_right, radius=40.0, n=200_001):
        self._func = func
        self._far = (far_left, far_right)
        self._radius = radius
        self._n = n
        self._spline = None

    def _build(self):
        from scipy.integrate import cumulative_simpson
        from scipy.interpolate import CubicSpline
        x = np.linspace(-self._radius, self._radius, self._n)
        q = np.asarray(self._func(x), dtype=float)
        cum = cumulative_simpson(q, x=x, initial=0.0)
        i0 = self._n // 2
        cum -= cum[i0]  # anchor Q(0) = 0
        self._spline = CubicSpline(x, cum)
        self._edges = (cum[0], cum[-1])

    def __call__(self, y):
        if self._spline is None:
            self._build()
        y = np.asarray(y, dtype=float)
        out = self._spline(np.clip(y, -self._radius, self._radius))
        lo, hi = self._edges
        fl, fr = self._far
        out = np.where(y < -self._radius, lo + fl * (y + self._radius), out)
        out = np.where(y > self._radius, hi + fr * (y - self._radius), out)
        return out if out.ndim else float(out)


@dataclass(frozen=True, eq=False)
class InitialData:
    variant: str
    func: Callable
    far_left: Optional[float]
    far_right: Optional[float]
    antiderivative: Optional[Callable] = None
    derivative: Optional[Callable] = None
    jump_positions: tuple = ()
    kink_positions: tuple = ()      # derivative discontinuities incl. jumps
    left_derivatives: tuple = ()
    right_derivatives: tuple = ()
    params: dict = field(default_factory=dict)

    def __call__(self, x):
        out = np.asarray(self.func(x), dtype=float)
        return out if out.ndim else float(out)

    def potential(self, y):
        """Antiderivative Q(y) = int_0^y q(s) ds (exact when available)."""
        if self.antiderivative is not None:
            out = np.asarray(self.antiderivative(y), dtype=float)
            return out if out.ndim else float(out)
        raise ValueError("no antiderivative attached; use smooth_data(...)")

    def slope(self, x, h=1e-5):
        """q'(x): exact callable when attached, Richardson stencil otherwise."""
        if self.derivative is not None:
            out = np.asarray(self.derivative(x), dtype=float)
            return out if out.ndim else float(out)
        x = np.asarray(x, dtype=float)
        d1 = (self.func(x + h) - self.func(x - h)) / (2 * h)
        d2 = (self.func(x + h / 2) - self.func(x - h / 2)) / h
        out = (4.0 * d2 - d1) / 3.0
        return out if out.ndim else float(out)

    def side_value(self, x, side):
        """One-sided value at a jump position; plain value elsewhere."""
        for j, xj in enumerate(self.jump_positions):
            if x == xj:
                if self.variant == "piecewise_constant":
                    vals = self.params["values"]
                    return vals[j] if side == "left" else vals[j + 1]
                if side == "left":
                    return self.left_derivatives[0]
                return self.right_derivatives[0]
        return float(self.func(x))


def smooth_data(func, antiderivative=None, derivative=None,
                far=(None, None), support_radius=40.0) -> InitialData:
    anti = antiderivative
    if anti is None and far[0] is not None:
        anti = _NumericAntiderivative(func, far[0], far[1],
                                      radius=support_radius)
    return InitialData("smooth", func, far[0], far[1],
                       antiderivative=anti, derivative=derivative)


def neg_tanh_data(amplitude: float = 1.0) -> InitialData:
    """q(x) = -A tanh(x) with exact antiderivative and derivative."""
    a = float(amplitude)
    return smooth_data(
        lambda x: -a * np.tanh(x),
        antiderivative=lambda y: -a * log_cosh(y),
        derivative=lambda x: -a / np.cosh(x) ** 2,
        far=(a, -a))


def step_data(u_left: float, u_right: float, tail_slope: float = 0.0,
              tail_curvature: float = 0.0) -> InitialData:
    """Jump at x = 0 with smooth tails (c1 x + c2 x^2) exp(-|x|)-style.

    The tails keep the far fields at (u_left, u_right) while giving the
    data nonzero one-sided derivatives at the jump: tail_slope sets the
    first, tail_curvature the second.  A pure step evolves exactly into the
    leading inner solution (viscosity scales out), so nontrivial tails are
    what make the leading-term comparison a real convergence test.
    """
    ul, ur = float(u_left), float(u_right)
    c1, c2 = float(tail_slope), float(tail_curvature)

    def func(x):
        x = np.asarray(x, dtype=float)
        xm = np.minimum(x, 0.0)     # clip the inactive branch: exp overflow
        xp = np.maximum(x, 0.0)
        left = ul + (c1 * xm + c2 * xm * xm) * np.exp(xm)
        right = ur + (c1 * xp - c2 * xp * xp) * np.exp(-xp)
        out = np.where(x < 0.0, left, right)
        return np.where(x == 0.0, 0.5 * (ul + ur), out)

    def anti(y):
        y = np.asarray(y, dtype=float)
        ym = np.minimum(y, 0.0)
        yp = np.maximum(y, 0.0)
        left = (ul * y + c1 * ((ym - 1.0) * np.exp(ym) + 1.0)
                + c2 * ((ym * ym - 2.0 * ym + 2.0) * np.exp(ym) - 2.0))
        right = (ur * y + c1 * (1.0 - (yp + 1.0) * np.exp(-yp))
                 - c2 * (2.0 - (yp * yp + 2.0 * yp + 2.0) * np.exp(-yp)))
        return np.where(y < 0.0, left, right)

    return InitialData(
        "step", func, ul, ur, antiderivative=anti,
        jump_positions=(0.0,), kink_positions=(0.0,),
        left_derivatives=(ul, c1, 2.0 * (c1 + c2)),
        right_derivatives=(ur, c1, -2.0 * (c1 + c2)),
        params={"tail_slope": c1, "tail_curvature": c2})


def weak_discontinuity_data(a: float, q0: Optional[Callable] = None
                            ) -> InitialData:
    """u0(x) = -(x + a x^2) * Theta(-x) * (1 + q0(x)), zero for x > 0.

    Continuous at 0 with one-sided derivatives -1 (left) and 0 (right)
    when q0 is absent.
    """
    if a <= 0:
        raise ValueError("parameter a must be positive")
    a = float(a)

    def func(x):
        x = np.asarray(x, dtype=float)
        body = -(x + a * x * x)
        if q0 is not None:
            body = body * (1.0 + np.asarray(q0(x), dtype=float))
        return np.where(x < 0.0, body, 0.0)

    anti = None
    deriv = None
    if q0 is None:
        def anti(y):
            y = np.asarray(y, dtype=float)
            return np.where(y < 0.0, -(y * y / 2.0 + a * y**3 / 3.0), 0.0)

        def deriv(x):
            x = np.asarray(x, dtype=float)
            return np.where(x < 0.0, -(1.0 + 2.0 * a * x), 0.0)

    return InitialData(
        "weak_discontinuity", func, None, 0.0,
        antiderivative=anti, derivative=deriv,
        kink_positions=(0.0,),
        left_derivatives=(0.0, -1.0, -2.0 * a),
        right_derivatives=(0.0, 0.0, 0.0),
        params={"a": a})


def scaled_data(profile: Callable, rho: float, tails: TailExpansion,
                profile_derivative: Optional[Callable] = None,
                profile_antiderivative: Optional[Callable] = None
                ) -> InitialData:
    """u0(x) = nu(x/rho) for a bounded profile with algebraic tails."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    rho = float(rho)

    func = lambda x: profile(np.asarray(x, dtype=float) / rho)
    deriv = None
    if profile_derivative is not None:
        deriv = lambda x: profile_derivative(
            np.asarray(x, dtype=float) / rho) / rho
    anti = None
    if profile_antiderivative is not None:
        anti = lambda y: rho * profile_antiderivative(
            np.asarray(y, dtype=float) / rho)

    # the profile varies on the rho scale around 0: quadrature consumers
    # split there so the narrow feature never sits mid-domain
    return InitialData(
        "scaled", func, tails.nu0_minus, tails.nu0_plus,
        antiderivative=anti, derivative=deriv,
        kink_positions=(0.0,),
        params={"rho": rho, "tails": tails, "profile": profile,
                "profile_derivative": profile_derivative})


def piecewise_constant_data(values, breakpoints) -> InitialData:
    """Plateaus values[0..m] separated by jumps at breakpoints[0..m-1]."""
    vals = tuple(float(v) for v in values)
    brks = tuple(float(b) for b in breakpoints)
    if len(vals) != len(brks) + 1:
        raise ValueError("need len(values) == len(breakpoints) + 1")
    if any(b2 <= b1 for b1, b2 in zip(brks, brks[1:])):
        raise ValueError("breakpoints must increase")

    def func(x):
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, vals[0])
        for v, b in zip(vals[1:], brks):
            out = np.where(x > b, v, out)
        for j, b in enumerate(brks):
            out = np.where(x == b, 0.5 * (vals[j] + vals[j + 1]), out)
        return out

    return InitialData(
        "piecewise_constant", func, vals[0], vals[-1],
        antiderivative=lambda y: _piecewise_linear_potential(y, vals, brks),
        jump_positions=brks, kink_positions=brks,
        params={"values": vals, "breakpoints": brks})


def _piecewise_linear_potential(y, vals, brks):
    """Q(y) = int_0^y q for piecewise-constant q; exact and vectorized."""
    y = np.asarray(y, dtype=float)
    nodes = np.asarray(brks)
    vals_arr = np.asarray(vals)
    # cumulative potential at breakpoints, zero at the first one
    qb = np.concatenate(([0.0], np.cumsum(vals_arr[1:-1] * np.diff(nodes))))
    anchor_x = np.concatenate(([nodes[0]], nodes))   # index by plateau
    anchor_q = np.concatenate(([0.0], qb))

    def unanchored(z):
        p = np.searchsorted(nodes, z, side="right")
        return anchor_q[p] + vals_arr[p] * (z - anchor_x[p])

    out = unanchored(y) - unanchored(np.asarray(0.0))
    return out if out.ndim else float(out)


def eval_initial(data: InitialData, x, side: Optional[str] = None):
    """Pointwise initial value; `side` picks a one-sided value at a jump."""
    if side is not None:
        return data.side_value(float(x), side)
    return data(x)
