"""Exception types shared across the package."""


class CVConcError(Exception):
    """Base class for all package errors."""


class InputError(CVConcError, ValueError):
    """Invalid argument or malformed input data."""


class UnphysicalStateError(InputError):
    """Parameters describe a non-normalizable wavefunction."""


class StateValidityError(CVConcError):
    """A state object violates its construction invariants."""


class NumericError(CVConcError):
    """A numerical computation produced an unusable result."""


class DegenerateStateError(NumericError):
    """State has no usable support for the requested operation."""


class TruncationWarning(UserWarning):
    """Discretization domain too small; significant probability mass lost."""
