"""Exception hierarchy shared by all modules."""


class PseudoHarmonicError(Exception):
    """Base class for every error raised by the package."""


class DomainError(PseudoHarmonicError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class PoleError(DomainError):
    """Evaluation at (or within tolerance of) a pole or a cell boundary.

    ``location`` holds the nearest singular point in the caller's variable.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ImaginaryLeakError(PseudoHarmonicError, ArithmeticError):
    """A complex quantity that must be real carries an imaginary part."""

    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude


class DegenerateError(PseudoHarmonicError, ArithmeticError):
    """Degenerate configuration (vanishing Jacobian, vanishing metric)."""


class SingularFrameError(DegenerateError):
    """The frame angle sits where sinh/sin of it vanishes."""


class InadmissibleError(DomainError):
    """Parameters that admit no real soliton for the given signature."""


class BranchError(DomainError):
    """A square root or logarithm would leave its principal branch."""


class OracleFailure(PseudoHarmonicError, RuntimeError):
    """A reference computation (ODE, quadrature) did not converge."""
