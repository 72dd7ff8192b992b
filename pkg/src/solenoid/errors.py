"""Exception hierarchy of the solenoid package."""


class SolenoidError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(SolenoidError, ValueError):
    """A physical parameter violates its domain (e.g. non-positive frequency)."""


class ProfileSyntaxError(SolenoidError, ValueError):
    """Profile mini-language text could not be parsed.

    Attributes
    ----------
    offset : int
        Byte offset into the original text where parsing failed.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class SingularPointError(SolenoidError, ValueError):
    """An operation was requested at a zero crossing of the frequency."""


class GeometricSingularityError(SolenoidError, ValueError):
    """Guiding-center decomposition degenerates because |omega(t)| ~ 0."""


class PoleError(SolenoidError, ValueError):
    """Function evaluated at a pole (e.g. log-gamma at a nonpositive integer)."""


class ConvergenceError(SolenoidError, ArithmeticError):
    """A series failed to converge within the term cap."""


class DomainError(SolenoidError, ValueError):
    """Arguments outside the validity domain of an algorithm branch."""


class DegenerateContinuationError(SolenoidError, ValueError):
    """Hypergeometric continuation degenerate (a - b integer).

    Perturb one parameter by a small epsilon (~1e-9) to move off the
    degenerate slice; the result changes at the same order.
    """


class LogarithmicSingularityError(SolenoidError, ValueError):
    """Legendre Q diverges (logarithmically) at xi = 1."""


class NoClosedFormError(SolenoidError, ValueError):
    """No closed-form solution for this profile; use the numeric solver."""


class DriftRejectionError(SolenoidError, ArithmeticError):
    """Numeric solution rejected because the Wronskian drift is too large."""


class StepSizeUnderflowError(SolenoidError, ArithmeticError):
    """Adaptive integrator step size underflowed near a singularity."""


class NotSettledError(SolenoidError, ArithmeticError):
    """Asymptotic-coefficient extraction window is not in the settled regime."""


class NoAsymptoticOscillationError(SolenoidError, ValueError):
    """omega_f = 0: no asymptotic oscillation to fit u+- against."""


class UnsupportedRegimeError(SolenoidError, ValueError):
    """Requested formula is restricted (e.g. fluctuation laws need s = 1)."""


class RegimeValidityError(SolenoidError, ValueError):
    """A regime precondition (inequality) is violated; message lists it."""


class NotTabulatedError(SolenoidError, KeyError):
    """No closed-form final value tabulated for this profile/gauge pair."""


class PreconditionError(SolenoidError, ValueError):
    """A documented operation precondition does not hold."""
