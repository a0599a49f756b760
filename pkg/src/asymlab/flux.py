"""Convex flux functions with exact derivatives.

Higher derivatives (phi''', phi^(q)) enter the transition-layer formulas, so
fluxes are supplied analytically: builtin quadratic (burgers) and polynomial
families evaluate derivatives exactly, and a composed-analytic kind accepts
user-supplied derivative callables.  No finite differencing anywhere.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConvexityViolation, OrderTooHigh, OrderTooLow

__all__ = ["FluxFunction", "make_flux"]

_CONVEXITY_SAMPLES = 2001


def _poly_derivative_table(coefficients, max_order):
    """Coefficient arrays of d^n/du^n of the polynomial, n = 0..max_order."""
    table = [np.asarray(coefficients, dtype=float)]
    for _ in range(max_order):
        c = table[-1]
        table.append(np.arange(1, len(c)) * c[1:] if len(c) > 1
                     else np.zeros(1))
    return tuple(tuple(c) for c in table)


@dataclass(frozen=True)
class FluxFunction:
    """Flux phi with derivatives up to max_derivative_order, exact by kind."""

    kind: str
    coefficients: tuple
    max_derivative_order: int
    u_lo: float
    u_hi: float
    _deriv_coeffs: tuple = field(default=(), repr=False)
    _analytic: tuple = field(default=(), repr=False)

    def __call__(self, u):
        return self.derivative(u, order=0)

    def derivative(self, u, order: int = 1):
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        if order > self.max_derivative_order:
            raise OrderTooHigh(
                f"derivative order {order} exceeds declared "
                f"max_derivative_order={self.max_derivative_order}")
        u = np.asarray(u, dtype=float)
        if self.kind == "analytic":
            out = np.asarray(self._analytic[order](u), dtype=float)
        else:
            c = self._deriv_coeffs[order]
            out = np.polynomial.polynomial.polyval(u, c)
        return out if out.ndim else float(out)

    def shifted(self, speed: float) -> "FluxFunction":
        """Flux of the co-moving frame: u -> phi(u) - speed*u."""
        if self.kind == "analytic":
            base = self._analytic

            def shift_order(n, fn):
                if n == 0:
                    return lambda u: fn(u) - speed * np.asarray(u, dtype=float)
                if n == 1:
                    return lambda u: fn(u) - speed
                return fn

            derivs = tuple(shift_order(n, fn) for n, fn in enumerate(base))
            return FluxFunction("analytic", self.coefficients,
                                self.max_derivative_order,
                                self.u_lo, self.u_hi, _analytic=derivs)
        c = list(self.coefficients) + [0.0] * max(0, 2 - len(self.coefficients))
        c[1] -= speed
        return FluxFunction(
            "polynomial", tuple(c), self.max_derivative_order,
            self.u_lo, self.u_hi,
            _deriv_coeffs=_poly_derivative_table(c, self.max_derivative_order))

    def is_normalized(self, tol: float = 1e-12) -> bool:
        """phi(0) = phi'(0) = 0 and phi''(0) = 1."""
        return (abs(self.derivative(0.0, 0)) <= tol
                and abs(self.derivative(0.0, 1)) <= tol
                and abs(self.derivative(0.0, 2) - 1.0) <= tol)

    def speed_bound(self) -> float:
        """max |phi'| over the operating interval (sampled)."""
        u = np.linspace(self.u_lo, self.u_hi, _CONVEXITY_SAMPLES)
        return float(np.max(np.abs(self.derivative(u, 1))))


def make_flux(kind, coefficients: Sequence[float] = (),
              interval=(-2.0, 2.0), max_derivative_order: int = 4,
              derivatives: Optional[Sequence[Callable]] = None
              ) -> FluxFunction:
    """Build a FluxFunction and check strict convexity on `interval`.

    kind: 'burgers' (phi = u^2/2 exactly), 'polynomial' (coefficients are
    c_0 + c_1 u + c_2 u^2 + ...), or 'analytic'/'composed-analytic'
    (derivatives = [phi, phi', phi'', ...]).
    """
    if isinstance(kind, dict):
        spec = dict(kind)
        return make_flux(spec.pop("kind"), **spec)
    if max_derivative_order < 4:
        raise OrderTooLow("max_derivative_order must be at least 4")
    u_lo, u_hi = float(interval[0]), float(interval[1])
    if not u_lo < u_hi:
        raise ValueError("operating interval must be nonempty")

    if kind == "burgers":
        coeffs = (0.0, 0.0, 0.5)
        flux = FluxFunction(
            "burgers", coeffs, max_derivative_order, u_lo, u_hi,
            _deriv_coeffs=_poly_derivative_table(coeffs, max_derivative_order))
    elif kind == "polynomial":
        coeffs = tuple(float(c) for c in coefficients)
        if len(coeffs) < 3:
            raise ValueError("polynomial flux needs at least a u^2 term")
        if not all(np.isfinite(coeffs)):
            raise ValueError("polynomial coefficients must be finite")
        flux = FluxFunction(
            "polynomial", coeffs, max_derivative_order, u_lo, u_hi,
            _deriv_coeffs=_poly_derivative_table(coeffs, max_derivative_order))
    elif kind in ("analytic", "composed-analytic"):
        if derivatives is None or len(derivatives) < max_derivative_order + 1:
            raise ValueError(
                "analytic flux needs derivative callables for orders "
                f"0..{max_derivative_order}")
        flux = FluxFunction("analytic", (), max_derivative_order, u_lo, u_hi,
                            _analytic=tuple(derivatives))
    else:
        raise ValueError(f"unknown flux kind {kind!r}")

    # interior sampling: endpoint convexity may vanish without harm
    u = np.linspace(u_lo, u_hi, _CONVEXITY_SAMPLES + 2)[1:-1]
    d2 = np.asarray(flux.derivative(u, 2))
    if not np.all(d2 > 0.0):
        worst = float(u[np.argmin(d2)])
        raise ConvexityViolation(
            f"phi''({worst:.6g}) = {float(np.min(d2)):.6g} <= 0 on "
            f"[{u_lo:.6g}, {u_hi:.6g}]")
    return flux
