"""Exception hierarchy shared by all nhfock modules."""


class NhfockError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDimension(NhfockError):
    """Operator/state dimensions are incompatible or below the minimum."""


class TruncationOverflow(NhfockError):
    """A state puts more population above the trusted levels than allowed."""


class ZeroState(NhfockError):
    """Normalization of an (effectively) zero amplitude vector."""


class GeneratorTooLarge(NhfockError):
    """Matrix-exponential generator norm exceeds the safety cap."""


class DeformationVanishes(NhfockError):
    """f(t) fell below the guard value; the requested frame is singular there."""


class DisplacementTooLarge(NhfockError):
    """|z| exceeds the displacement cap for the current truncation."""


class SqueezeTooLarge(NhfockError):
    """Squeeze parameter outside the range the truncation can support."""


class NonHermitianOperator(NhfockError):
    """An operation requiring a Hermitian operator received a non-Hermitian one."""


class NoConvergence(NhfockError):
    """Every restart of an iterative minimization failed to converge."""


class ConfigError(NhfockError):
    """Bad CLI configuration or flag combination (exit code 2)."""
