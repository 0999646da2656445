class BosKernelError(Exception):
    """Base class for errors raised by boskernel."""


class DimensionMismatch(BosKernelError, ValueError):
    pass


class TruncationOverflow(BosKernelError, ValueError):
    """A creator pushed a coefficient past the truncation degree."""


class NotSymmetric(BosKernelError, ValueError):
    pass


class SingularMap(BosKernelError, ValueError):
    pass


class NormTooLarge(BosKernelError, ValueError):
    pass


class NotSymplectic(BosKernelError, ValueError):
    """The Omega condition failed for the requested kind."""
