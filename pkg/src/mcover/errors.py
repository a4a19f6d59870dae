"""Exception hierarchy shared by all mcover modules."""


class McoverError(Exception):
    """Base class for every error raised by mcover."""


class GraphFormatError(McoverError, ValueError):
    """Malformed graph6 or edge-list input."""


class NotCubicError(McoverError, ValueError):
    """The decoded graph has a loop or a vertex whose degree is not 3."""


class UnsupportedFormatError(McoverError, ValueError):
    """The graph cannot be expressed in the requested format."""


class NotAMatchingError(McoverError, ValueError):
    """An edge set passed as a perfect matching is not one."""


class DomainError(McoverError, ValueError):
    """A parameter lies outside the range where an operation is defined."""


class InconsistencyError(McoverError, RuntimeError):
    """An internal invariant was violated; this indicates a bug."""
