"""Affine-plus-power changes of variables between outer (x, t) and inner
coordinates, one constructor per singular-point scenario.

Each map is
    tau = (t - t_star) / t_scale
    xi  = (x - x_star - x_shift_speed * (t - t_star)) / x_scale
with scenario-specific scale lengths.  The fold scaling accepts the extra
normal-form factors that bring the local cubic of the limit solution to the
canonical H^3 - tau*H + xi = 0; they default to 1.
"""

from dataclasses import dataclass

__all__ = [
    "InnerScaling",
    "initial_jump_scaling",
    "collision_scaling",
    "fold_scaling",
    "weakshock_scaling",
    "heat_zone_scaling",
    "inner_layer_scaling",
    "to_inner",
    "from_inner",
]


@dataclass(frozen=True)
class InnerScaling:
    x_star: float
    t_star: float
    x_scale: float
    t_scale: float
    x_exponent: float   # x_scale ~ eps**x_exponent (bookkeeping)
    t_exponent: float
    x_shift_speed: float = 0.0
    label: str = ""

    def __post_init__(self):
        if self.x_scale <= 0.0 or self.t_scale <= 0.0:
            raise ValueError("scales must be positive")
        if self.x_exponent <= 0.0 or self.t_exponent <= 0.0:
            raise ValueError("exponents must be positive")

    def to_inner(self, x, t):
        dt = t - self.t_star
        tau = dt / self.t_scale
        xi = (x - self.x_star - self.x_shift_speed * dt) / self.x_scale
        return xi, tau

    def from_inner(self, xi, tau):
        dt = tau * self.t_scale
        t = self.t_star + dt
        x = self.x_star + self.x_shift_speed * dt + xi * self.x_scale
        return x, t


def to_inner(scaling: InnerScaling, x, t):
    return scaling.to_inner(x, t)


def from_inner(scaling: InnerScaling, xi, tau):
    return scaling.from_inner(xi, tau)


def initial_jump_scaling(eps: float, shock_speed: float = 0.0,
                         x_star: float = 0.0, t_star: float = 0.0
                         ) -> InnerScaling:
    """zeta = (x - s(t))/eps, tau = t/eps, with the affine frame s ~ s' t."""
    return InnerScaling(x_star, t_star, eps, eps, 1.0, 1.0,
                        x_shift_speed=shock_speed, label="initial-jump")


def collision_scaling(eps: float, x_star: float, t_star: float
                      ) -> InnerScaling:
    """zeta = (x - x*)/eps, tau = (t - t*)/eps around the merge point."""
    return InnerScaling(x_star, t_star, eps, eps, 1.0, 1.0, label="collision")


def fold_scaling(eps: float, t_star: float, x_star: float = 0.0,
                 x_factor: float = 1.0, t_factor: float = 1.0,
                 shift_speed: float = 0.0) -> InnerScaling:
    """xi = x_factor * (x - x*)/eps^(3/4), tau = t_factor * (t - t*)/eps^(1/2).

    x_factor/t_factor are the normal-form factors of the catastrophe
    (see inner_fold.fold_normalization); 1 for a pre-normalized cubic.
    """
    return InnerScaling(x_star, t_star, eps ** 0.75 / x_factor,
                        eps ** 0.5 / t_factor, 0.75, 0.5,
                        x_shift_speed=shift_speed, label="fold")


def weakshock_scaling(eps: float, t_star: float, x_star: float = 0.0
                      ) -> InnerScaling:
    """xi = (x - x*)/eps^(2/3), tau = (t - t*)/eps^(1/3)."""
    return InnerScaling(x_star, t_star, eps ** (2.0 / 3.0),
                        eps ** (1.0 / 3.0), 2.0 / 3.0, 1.0 / 3.0,
                        label="weakshock")


def heat_zone_scaling(eps: float, rho: float) -> InnerScaling:
    """sigma = x/rho, omega = eps*t/rho^2 (two-parameter heat zone)."""
    return InnerScaling(0.0, 0.0, rho, rho * rho / eps, 1.0, 2.0,
                        label="heat-zone")


def inner_layer_scaling(eps: float) -> InnerScaling:
    """eta = x/eps, theta = t/eps (viscous layer of the two-parameter case)."""
    return InnerScaling(0.0, 0.0, eps, eps, 1.0, 1.0, label="inner-layer")
