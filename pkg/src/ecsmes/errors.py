"""Exception types raised across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class NullStateError(DomainError):
    """A state vector has (numerically) zero norm."""


class PostSelectionError(NullStateError):
    """A post-selected outcome has vanishing probability."""


class DegenerateBasisError(DomainError):
    """Two branch states are parallel, so no orthogonal qubit basis exists."""


class UnsupportedMeasureError(ValueError):
    """A measure is undefined for the given input (e.g. concurrence at Schmidt rank > 2)."""


class CapacityError(RuntimeError):
    """A representation would exceed its configured size limit."""
