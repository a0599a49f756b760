"""Problem configuration binding flux, initial data, viscosity and domain."""

from dataclasses import dataclass

import numpy as np

from .flux import FluxFunction
from .initial_data import InitialData

__all__ = ["ProblemConfig"]

_FAR_FIELD_TOL = 1e-12


@dataclass(frozen=True)
class ProblemConfig:
    flux: FluxFunction
    initial: InitialData
    epsilon: float
    t0: float
    t_end: float
    half_width: float
    enforce_far_field: bool = True

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if not self.t_end > self.t0:
            raise ValueError("t_end must exceed t0")
        if self.half_width <= 0.0:
            raise ValueError("half_width must be positive")
        if self.enforce_far_field and self.initial.far_left is not None:
            L = self.half_width
            dl = abs(float(self.initial(-L)) - self.initial.far_left)
            dr = abs(float(self.initial(L)) - self.initial.far_right)
            if max(dl, dr) > _FAR_FIELD_TOL:
                raise ValueError(
                    f"initial data deviates from far-field limits at +-{L} "
                    f"by {max(dl, dr):.3g} > {_FAR_FIELD_TOL}")

    def boundary_values(self):
        """Dirichlet values: far-field limits, or data at the cut points."""
        L = self.half_width
        left = (self.initial.far_left if self.initial.far_left is not None
                else float(self.initial(-L)))
        right = (self.initial.far_right if self.initial.far_right is not None
                 else float(self.initial(L)))
        return left, right

    def x_grid(self, nx: int):
        return np.linspace(-self.half_width, self.half_width, nx)
