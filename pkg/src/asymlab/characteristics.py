"""Limit (zero-viscosity) solution machinery.

Characteristics x = x0 + phi'(q(x0)) t are inverted by bracketed root
finding; the gradient catastrophe is located from the compression rate
-d/dx[phi'(q)]; shocks are tracked by integrating the jump condition with
classic fourth-order steps, with the side states re-read from the
characteristic fan at every stage; collisions are roots of the gap between
two tracked curves.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq, minimize_scalar

from .errors import (
    DegenerateCollision,
    MultivaluedRegion,
    NoCatastrophe,
    NoCollision,
    StatesCollapsed,
)
from .flux import FluxFunction
from .initial_data import InitialData

__all__ = [
    "ShockCurve",
    "SingularPoint",
    "characteristic_solution",
    "catastrophe_point",
    "track_shock",
    "detect_collision",
]

_SCAN_POINTS = 2001
_ROOT_TOL = 1e-11


@dataclass(frozen=True)
class SingularPoint:
    kind: str                    # initial-jump | catastrophe | collision | weak-to-shock
    x_star: float
    t_star: float
    data: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class ShockCurve:
    times: np.ndarray
    positions: np.ndarray
    u_minus: np.ndarray
    u_plus: np.ndarray
    birth_time: float

    def __post_init__(self):
        object.__setattr__(self, "_pos_spline",
                           CubicSpline(self.times, self.positions))

    def position(self, t):
        return float(self._pos_spline(t))

    def speed(self, t):
        return float(self._pos_spline(t, 1))

    def rh_defect(self, flux: FluxFunction):
        """max |s' - (phi(u+) - phi(u-)) / (u+ - u-)| over interior samples,
        with s' from centered differences of the samples."""
        t, s = self.times, self.positions
        ds = (s[2:] - s[:-2]) / (t[2:] - t[:-2])
        um, up = self.u_minus[1:-1], self.u_plus[1:-1]
        rh = (flux(up) - flux(um)) / (up - um)
        return float(np.max(np.abs(ds - rh)))


def _speed_bound_for_data(q: InitialData, flux: FluxFunction, radius=60.0):
    u = q(np.linspace(-radius, radius, 601))
    return float(np.max(np.abs(flux.derivative(u, 1)))) + 1e-12


def _characteristic_roots(q: InitialData, flux: FluxFunction,
                          x: float, t: float):
    """All x0 with x0 + phi'(q(x0)) t = x, sorted ascending."""
    c = _speed_bound_for_data(q, flux)
    lo, hi = x - c * t - 1.0, x + c * t + 1.0

    def g(x0):
        return x0 + flux.derivative(q(x0), 1) * t - x

    xs = np.linspace(lo, hi, _SCAN_POINTS)
    gs = g(xs)
    roots = []
    scale = max(1.0, abs(x), c * t)
    for i in np.flatnonzero(np.signbit(gs[:-1]) != np.signbit(gs[1:])):
        r = brentq(lambda z: float(g(np.asarray(z))), xs[i], xs[i + 1],
                   xtol=1e-14, rtol=8.9e-16)
        if abs(float(g(np.asarray(r)))) <= _ROOT_TOL * scale:
            if not roots or abs(r - roots[-1]) > 1e-9 * scale:
                roots.append(r)
    for i in np.flatnonzero(gs == 0.0):
        r = float(xs[i])
        if not any(abs(r - rr) <= 1e-9 * scale for rr in roots):
            roots.append(r)
    roots.sort()
    return roots


def _state_candidates(q: InitialData, flux: FluxFunction, x: float, t: float):
    """Values of all characteristic families through (x, t); a root sitting
    exactly on a data jump contributes both one-sided values."""
    scale = max(1.0, abs(x))
    values = []
    for r in _characteristic_roots(q, flux, x, t):
        on_jump = [j for j in q.jump_positions if abs(r - j) <= 1e-9 * scale]
        if on_jump:
            values.append(q.side_value(on_jump[0], "left"))
            values.append(q.side_value(on_jump[0], "right"))
        else:
            values.append(float(q(r)))
    return values


def characteristic_solution(q: InitialData, flux: FluxFunction,
                            x: float, t: float,
                            side: Optional[str] = None) -> float:
    """Value carried to (x, t) along a characteristic.

    Pre-catastrophe the root x0 of x0 + phi'(q(x0)) t = x is unique.  Where
    several characteristic families overlap (behind a shock or after a
    catastrophe), `side` = 'left'/'right' selects the outermost family;
    without it a multivalued query raises.
    """
    if t < 0:
        raise ValueError("t must be >= 0 relative to the initial time")
    roots = _characteristic_roots(q, flux, x, t)
    if not roots:
        raise MultivaluedRegion(
            f"no characteristic root found for (x, t) = ({x}, {t})")
    if len(roots) > 1:
        if side == "left":
            x0 = roots[0]
        elif side == "right":
            x0 = roots[-1]
        else:
            raise MultivaluedRegion(
                f"{len(roots)} characteristic roots at (x, t) = ({x}, {t})")
    else:
        x0 = roots[0]
    if side is not None and x0 in q.jump_positions:
        return q.side_value(x0, side)
    return float(q(x0))


def catastrophe_point(q: InitialData, flux: FluxFunction,
                      t0: float = 0.0, search_radius: float = 15.0
                      ) -> SingularPoint:
    """First crossing time of characteristics and its location.

    t* = t0 + 1/max(-d/dx phi'(q)); the maximizer also yields the local
    cubic data (slope of q, phi'' at the state, third derivative of the
    characteristic speed profile) consumed by the fold normalization.
    """
    def compression(x):
        x = np.asarray(x, dtype=float)
        return -flux.derivative(q(x), 2) * q.slope(x)

    xs = np.linspace(-search_radius, search_radius, 10_001)
    fs = compression(xs)
    j = int(np.argmax(fs))
    if fs[j] <= 1e-12:
        raise NoCatastrophe("data is nowhere compressive")
    res = minimize_scalar(lambda x: -float(compression(np.asarray(x))),
                          bounds=(xs[max(j - 1, 0)], xs[min(j + 1, len(xs) - 1)]),
                          method="bounded", options={"xatol": 1e-12})
    x0 = float(res.x)
    f_max = float(compression(np.asarray(x0)))
    t_star = t0 + 1.0 / f_max
    u_star = float(q(x0))
    speed = float(flux.derivative(u_star, 1))
    x_star = x0 + speed * (t_star - t0)

    def k(x):
        return flux.derivative(q(np.asarray(x, dtype=float)), 1)

    def k3(h):
        return float(k(x0 + 2 * h) - 2 * k(x0 + h)
                     + 2 * k(x0 - h) - k(x0 - 2 * h)) / (2 * h**3)

    # Richardson-extrapolated third derivative of the speed profile
    h = 0.02
    k3_val = (4.0 * k3(h / 2) - k3(h)) / 3.0
    c3 = k3_val * (t_star - t0)

    return SingularPoint(
        "catastrophe", x_star, t_star,
        data={"x0": x0, "u_star": u_star, "speed": speed,
              "q_slope": float(q.slope(x0)),
              "phi2": float(flux.derivative(u_star, 2)),
              "c3": c3, "compression": f_max})


def _rh_speed(q, flux, s, t, hint_minus, hint_plus):
    """Jump speed with side states chosen by continuation from hints.

    Hint-based selection keeps each tracker attached to the same pair of
    characteristic families even where a third family (another shock's fan)
    overlaps the query point.
    """
    cands = _state_candidates(q, flux, s, t)
    if not cands:
        raise MultivaluedRegion(f"no characteristic state at ({s}, {t})")
    um = min(cands, key=lambda v: abs(v - hint_minus))
    up = min(cands, key=lambda v: abs(v - hint_plus))
    if um <= up:
        um, up = max(cands), min(cands)
    if abs(um - up) < 1e-10:
        raise StatesCollapsed(f"states merged at (x, t) = ({s}, {t})")
    return (flux(up) - flux(um)) / (up - um), um, up


def track_shock(q: InitialData, flux: FluxFunction, birth: SingularPoint,
                t_end: float, n_steps: int = 400) -> ShockCurve:
    """Integrate s'(t) = [phi(u)] / [u] with RK4 from the birth point."""
    if birth.kind == "catastrophe":
        # states coincide at the catastrophe itself; step off it and seed
        # the state hints from the local cubic opening ~ sqrt(dt)
        dt0 = (t_end - birth.t_star) / n_steps
        t_start = birth.t_star + dt0
        s = birth.x_star + birth.data.get("speed", 0.0) * dt0
        u_star = birth.data.get("u_star", 0.0)
        c3 = birth.data.get("c3", 1.0)
        T = birth.t_star - birth.data.get("t0", 0.0)
        slope = abs(birth.data.get("q_slope", 1.0))
        opening = slope * np.sqrt(max(6.0 * dt0 / (max(c3, 1e-12) * T), 0.0))
        hint_minus, hint_plus = u_star + opening, u_star - opening
    else:
        t_start = birth.t_star
        s = birth.x_star
        hint_minus = q.side_value(birth.x_star, "left")
        hint_plus = q.side_value(birth.x_star, "right")
    if t_end <= t_start:
        raise ValueError("t_end must exceed the birth time")

    ts = np.linspace(t_start, t_end, n_steps + 1)
    dt = ts[1] - ts[0]
    positions = np.empty(n_steps + 1)
    um_arr = np.empty(n_steps + 1)
    up_arr = np.empty(n_steps + 1)
    for i, t in enumerate(ts):
        v1, um, up = _rh_speed(q, flux, s, t, hint_minus, hint_plus)
        positions[i], um_arr[i], up_arr[i] = s, um, up
        hint_minus, hint_plus = um, up
        if i == n_steps:
            break
        v2 = _rh_speed(q, flux, s + 0.5 * dt * v1, t + 0.5 * dt, um, up)[0]
        v3 = _rh_speed(q, flux, s + 0.5 * dt * v2, t + 0.5 * dt, um, up)[0]
        v4 = _rh_speed(q, flux, s + dt * v3, t + dt, um, up)[0]
        s = s + dt * (v1 + 2 * v2 + 2 * v3 + v4) / 6.0
    return ShockCurve(ts, positions, um_arr, up_arr,
                      birth_time=birth.t_star)


def detect_collision(s1: ShockCurve, s2: ShockCurve) -> SingularPoint:
    """Merge point of two tracked shocks: root of s2(t) - s1(t)."""
    t_lo = max(s1.times[0], s2.times[0])
    t_hi = min(s1.times[-1], s2.times[-1])
    if t_hi <= t_lo:
        raise NoCollision("curves share no time interval")

    def gap(t):
        return s2.position(t) - s1.position(t)

    ts = np.linspace(t_lo, t_hi, 1001)
    gs = np.array([gap(t) for t in ts])
    sign_change = np.flatnonzero(np.signbit(gs[:-1]) != np.signbit(gs[1:]))
    if sign_change.size == 0:
        exact = np.flatnonzero(gs == 0.0)
        if exact.size == 0:
            raise NoCollision(
                f"gap stays bounded away from zero (min {np.min(np.abs(gs)):.3g})")
        t_star = float(ts[exact[0]])
    else:
        i = sign_change[0]
        t_star = brentq(gap, ts[i], ts[i + 1], xtol=1e-13)

    v1, v2 = s1.speed(t_star), s2.speed(t_star)
    if abs(v1 - v2) <= 1e-6:
        raise DegenerateCollision(
            "curves merge tangentially; transversal collision required")
    x_star = 0.5 * (s1.position(t_star) + s2.position(t_star))

    def interp(curve, arr):
        return float(np.interp(t_star, curve.times, arr))

    u_left = interp(s1, s1.u_minus)
    u_mid = 0.5 * (interp(s1, s1.u_plus) + interp(s2, s2.u_minus))
    u_right = interp(s2, s2.u_plus)
    return SingularPoint(
        "collision", x_star, t_star,
        data={"u_left": u_left, "u_mid": u_mid, "u_right": u_right,
              "s1_speed": v1, "s2_speed": v2})
