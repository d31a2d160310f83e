"""Exception hierarchy shared across the package."""


class HydroblowError(Exception):
    """Base class for all package-specific errors."""


class GridError(HydroblowError, ValueError):
    """Grid cannot support the 4th-order stencils (too few nodes, bad layout)."""


class ProfileError(HydroblowError, ValueError):
    """A sampled profile violates its construction invariants."""


class ConstraintViolationError(HydroblowError, RuntimeError):
    """The zero-mean constraint (or a quantity derived from it) has drifted."""


class NoBlowupEvidenceError(HydroblowError, ValueError):
    """A wall-value series does not support a blowup-time extrapolation."""


class OutOfDomainError(HydroblowError, ValueError):
    """A requested sample point lies outside the stored field range."""


class InterpolationFailureError(HydroblowError, RuntimeError):
    """A traced trajectory left the unit interval beyond rounding slack."""


class CounterexampleError(HydroblowError, AssertionError):
    """A randomized trial violated an inequality that must hold.

    This falsifies the implementation (quadrature or generator), not the
    inequality itself; the offending generator state is attached.
    """

    def __init__(self, message, *, weights=None, k=None, trial=None):
        super().__init__(message)
        self.weights = weights
        self.k = k
        self.trial = trial


class PropertyViolationError(HydroblowError, RuntimeError):
    """A monitored mathematical property failed during an experiment run."""


class UsageError(HydroblowError, ValueError):
    """Bad command line, config file, or output location."""
