"""Exception types shared across the package."""


class JosephsonError(Exception):
    """Base class for all errors raised by this package."""


class StepUnderflow(JosephsonError):
    """The adaptive stepper needed a step below ``min_step`` (or ran out of
    its step budget).  Signals parameters outside the supported stiffness
    range."""


class NotMoebius(JosephsonError):
    """The Moebius/monodromy route requires the pure cosine nonlinearity
    (gamma = 1)."""


class DeterminantDrift(JosephsonError):
    """Monodromy determinant left its conservation band by more than the
    integration accuracy can explain."""


class BracketFailure(JosephsonError):
    """No sign change found while expanding a root bracket."""


class QuadratureStall(JosephsonError):
    """Adaptive quadrature could not reach the target error within its
    panel budget."""


class DegenerateForcing(JosephsonError):
    """A forcing profile has a non-simple zero; stationary-phase
    asymptotics are inapplicable."""


class OutOfRegime(JosephsonError):
    """Parameters violate the asymptotic-regime preconditions of a
    residual check."""


class SignChange(JosephsonError):
    """The phase velocity changes sign on a window that requires
    monotone motion."""


class DomainTooSmall(JosephsonError):
    """Argument below the validity threshold of an asymptotic formula."""
