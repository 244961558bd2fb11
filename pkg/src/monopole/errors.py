"""Exception hierarchy for monopole.

Two families matter to callers: ``InputError`` for arguments or parameter points
outside an operation's domain (CLI exit code 2), and ``NumericalError`` for
procedures that ran but could not produce a trustworthy number (CLI exit code 3).
"""


class MonopoleError(Exception):
    """Base class for every error raised by monopole."""

    pass


class InputError(MonopoleError, ValueError):
    """Raised when an argument or parameter point is outside an operation's domain."""

    pass


class NumericalError(MonopoleError, ArithmeticError):
    """Raised when a numerical procedure fails to converge or loses accuracy."""

    pass


class BadArgumentError(InputError):
    """Raised for malformed arguments (non-positive radius, pole latitude, short contour)."""

    pass


class NotHermitianError(InputError):
    """Raised when a matrix expected to be Hermitian is not, beyond tolerance."""

    pass


class CutoffTooSmallError(InputError):
    """Raised when the Floquet cutoff is below the largest drive harmonic."""

    pass


class BadSpinError(InputError):
    """Raised when 2j is not a positive integer."""

    pass


class ZeroFieldError(InputError):
    """Raised when the Rabi field vanishes and the dark/bright basis is undefined."""

    pass


class ChartSingularError(InputError):
    """Raised when a path touches the poles of the (θ, φ, ψ) chart."""

    pass


class OnStringError(InputError):
    """Raised when a vector potential is evaluated on its Dirac string."""

    pass


class StringCrossingError(InputError):
    """Raised when a contour sample sits on the string of the eigenvector gauge."""

    pass


class NearDegenerateError(InputError):
    """Raised when a curvature is requested too close to a degeneracy."""

    pass


class OutOfRangeError(InputError):
    """Raised when the analytic orbit is evaluated beyond its asymptote."""

    pass


class DegenerateContourError(InputError):
    """Raised when consecutive contour points coincide."""

    pass


class NotInCartanSpanError(InputError):
    """Raised when a charge matrix has components outside the SU(3) Cartan subalgebra."""

    pass


class JumpTooLargeError(NumericalError):
    """Raised when successive phases jump by π or more (under-sampled sequence)."""

    pass


class ConvergenceFailError(NumericalError):
    """Raised when a Floquet spectrum moves when the cutoff is raised."""

    pass


class UnderSampledError(NumericalError):
    """Raised when adjacent Floquet mode samples are too far apart in phase."""

    pass


class BranchJumpError(NumericalError):
    """Raised when a quasienergy branch cannot be followed across a parameter step."""

    pass


class NonConvergentError(NumericalError):
    """Raised when a lattice Chern sum is not close to an integer."""

    pass


class NonFiniteError(NumericalError):
    """Raised when an evaluation returns NaN or infinity."""

    pass


class OriginApproachError(NumericalError):
    """Raised when a trajectory passes through the monopole at the origin."""

    pass
