"""Exception hierarchy shared across the package."""


class QentError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(QentError):
    """Sizes of a graph and a vertex map (or two graphs) do not line up."""


class SizeLimitExceeded(QentError):
    """Input is larger than a hard cap built into an operation."""


class NonConvergence(QentError):
    """Power iteration did not reach the residual tolerance within the cap."""


class EmptySubshift(QentError):
    """The essential part of the graph is empty; the chain has no points."""


class CapExceeded(QentError):
    """An enumeration or state-space cap was exceeded."""


class SectionAbsent(QentError):
    """No right-inverse graph morphism exists for the requested quotient."""


class NoCompatibleSelection(QentError):
    """No cell sits uniquely inside a quotient fiber; cannot build a section."""


class ParseError(QentError):
    """A graph/map/spec file is malformed.

    Carries the offending 1-based line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class HorseshoeValidationError(QentError):
    """Base for violations of the piecewise-affine map conditions."""


class GridNotInvariant(HorseshoeValidationError):
    """A breakpoint value falls outside the grid."""


class ConstantPiece(HorseshoeValidationError):
    """A dynamics piece is constant (its affine restriction is degenerate)."""


class SinkInMarkovGraph(HorseshoeValidationError):
    """Some cell of the transition graph has no outgoing edge."""


class GridMismatch(HorseshoeValidationError):
    """Dynamics and quotient are defined on different grids."""


class NotMonotone(HorseshoeValidationError):
    """A quotient map has a decreasing step."""
