"""Exception types raised by the library."""


class SuperoscError(Exception):
    """Base class for all library errors."""


class DomainError(SuperoscError, ValueError):
    """An argument lies outside the domain of a function."""


class InvalidBandError(SuperoscError, ValueError):
    """A frequency band with ``omega_max <= omega_min``."""


class InvalidIntervalError(SuperoscError, ValueError):
    """An integration or fit interval that is empty or reversed."""


class DegenerateSpectrumError(SuperoscError, ArithmeticError):
    """The zeroth coefficient is too small to normalize by."""


class NodeError(SuperoscError, ArithmeticError):
    """The function vanishes where a logarithmic derivative is requested."""


class CoverageError(SuperoscError, ValueError):
    """Tabulated samples do not span the requested interval."""


class NumericalError(SuperoscError, ArithmeticError):
    """Non-finite values reached a solver."""
