"""Exception types shared across the package.

The CLI maps these onto exit codes: parameter/domain problems exit 2,
numerical non-convergence exits 3, verification failures exit 4.
"""


class SpinStringError(Exception):
    """Base class for all package errors."""


class ParameterError(SpinStringError, ValueError):
    """A parameter violates its documented admissibility condition."""


class DomainError(SpinStringError, ValueError):
    """An evaluation point lies outside the function's domain."""


class NonNormalizableError(ParameterError):
    """Requested bound-state channel is not square integrable."""


class NoRealRootError(SpinStringError):
    """The closed-form energy discriminant is negative at this level."""


class SingularityError(SpinStringError):
    """Evaluation hit a pole of a rational potential.

    Carries the singular abscissa so callers can report or mask it.
    """

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class NonConvergenceError(SpinStringError):
    """An iterative scheme exhausted its budget.

    ``best`` holds the last estimate, ``achieved_tol`` the error bound
    actually reached.
    """

    def __init__(self, message, best=None, achieved_tol=None):
        super().__init__(message)
        self.best = best
        self.achieved_tol = achieved_tol


class VerificationError(SpinStringError):
    """A self-check failed; names the first failing check."""
