"""Error taxonomy shared by the library and the CLI exit codes."""


class LoopFusionError(Exception):
    """Base class for all library errors."""


class ValidationError(LoopFusionError):
    """Invalid input: bad algebra label, rank mismatch, weight outside its
    required region (non-dominant, outside the level-k alcove, ...)."""


class NumericalError(LoopFusionError):
    """A floating-point cross-check failed its gate (unitarity residual,
    integer-rounding residual).  Never silently absorbed."""


class ResourceError(LoopFusionError):
    """A configured cap was exceeded (Weyl group order, weight-system size)."""
