"""Exception hierarchy.

Each class corresponds to one failure mode named in the operation
contracts; ``WStateError`` is the common base so callers can catch
everything from this library at once.
"""


class WStateError(Exception):
    """Base class for all errors raised by this library."""


class InvalidArity(WStateError):
    """Party count outside the supported range."""


class ArityMismatch(WStateError):
    """Two objects that must share a party count do not."""


class ZeroState(WStateError):
    """All amplitudes vanish; no state can be normalized."""


class SingularImage(WStateError):
    """A local-operator product annihilated the state."""


class InvalidParty(WStateError):
    """Party index outside 1..n."""


class NumericalViolation(WStateError):
    """A computed quantity left its mathematically allowed range."""


class SingularOperator(WStateError):
    """A 2x2 factor is singular where invertibility is required."""


class NoBracket(WStateError):
    """Bisection endpoints do not straddle zero."""


class DegenerateState(WStateError):
    """Some single-excitation weight is (numerically) zero; the state has
    left the strictly positive coefficient family."""


class NotExcitationForm(WStateError):
    """Amplitude support extends beyond Hamming weight one."""


class NonPositiveDeterminant(WStateError):
    """A single-qubit marginal determinant is not strictly positive."""


class InvalidPivot(WStateError):
    """The designated plus-branch party does not carry a maximal target."""


class DomainError(WStateError):
    """Evaluation point below the square-root domain of the branch function."""


class NoSolution(WStateError):
    """No coefficient vector reproduces the requested marginal targets.

    Expected for infeasible (e.g. noisy) targets; callers should treat it
    as a negative answer, not a crash.
    """


class ToleranceFailure(WStateError):
    """A root or verification step missed its required residual."""


class ValidationFailure(WStateError):
    """A reconstructed solution failed its forward consistency check."""
