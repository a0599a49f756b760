"""Exception hierarchy shared by all asymlab modules."""


class AsymlabError(Exception):
    """Base class for all library errors."""


# --- flux / initial data -------------------------------------------------

class ConvexityViolation(AsymlabError):
    """Sampled second derivative of the flux is not strictly positive."""


class OrderTooLow(AsymlabError):
    """Flux was requested with fewer derivatives than the formulas need."""


class NotNormalized(AsymlabError):
    """Flux does not satisfy phi(0) = phi'(0) = 0, phi''(0) = 1."""


class BNonPositive(AsymlabError):
    """Cubic-decay constant b = a - phi'''(0)/2 is not positive."""


# --- quadrature ----------------------------------------------------------

class QuadratureFailure(AsymlabError):
    """Generic quadrature breakdown (non-finite integrand values)."""


class NoConvergence(QuadratureFailure):
    """Refinement levels failed to contract below tolerance."""


# --- viscous solver ------------------------------------------------------

class Instability(AsymlabError):
    """Solution left the maximum-principle band; time step too large."""


class DomainTooSmall(AsymlabError):
    """Solution drifted near the truncation boundary."""


class SmallTimeBlowup(AsymlabError):
    """Hopf integral requested at t below resolvable time."""


# --- limit solution machinery --------------------------------------------

class MultivaluedRegion(AsymlabError):
    """More than one characteristic root brackets (post-catastrophe query)."""


class NoCatastrophe(AsymlabError):
    """Initial data is expansive everywhere; no gradient catastrophe."""


class StatesCollapsed(AsymlabError):
    """Shock states merged; the discontinuity died."""


class NoCollision(AsymlabError):
    """Shock curves stay separated on the common time interval."""


class DegenerateCollision(AsymlabError):
    """Shock curves merge tangentially; transversality assumption violated."""


# --- inner expansions ----------------------------------------------------

class InsideCusp(AsymlabError):
    """Fold cubic has three real roots; no canonical branch."""


class WindowViolation(AsymlabError):
    """Query point outside the validity window of an asymptotic law."""


class OrderTooHigh(AsymlabError):
    """Recurrence coefficient requested beyond the implemented order."""


class DegenerateJump(AsymlabError):
    """Tail states coincide; renormalized formula undefined."""


# --- reporting / CLI -----------------------------------------------------

class DegenerateFit(AsymlabError):
    """Errors at or below the noise floor; rate fit meaningless."""


class ParseError(AsymlabError):
    """Scenario configuration text could not be parsed."""


class ValidationError(AsymlabError):
    """Scenario configuration violates an invariant."""
