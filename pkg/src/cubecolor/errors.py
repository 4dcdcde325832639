"""Exception types shared across the package."""


class CubeColorError(Exception):
    """Base class for all errors raised by this package."""


class OutOfRangeError(CubeColorError):
    """A vertex, dimension, or color fell outside its valid range."""


class NonCanonicalEdgeError(CubeColorError):
    """An edge reference whose base vertex has the dimension bit set."""


class NotTwoColoredError(CubeColorError):
    """A four-cycle swap was requested on a cycle that does not carry exactly two colors."""


class DimensionMismatchError(CubeColorError):
    """Two objects built for different cube dimensions were combined."""


class IncompatibleInstanceError(CubeColorError):
    """The precoloring is improper or assigns a color that its own edge forbids."""


class NoPermutationFoundError(CubeColorError):
    """No color permutation passed the sparsity conditions within the search budget."""

    def __init__(self, message, best_report=None):
        super().__init__(message)
        self.best_report = best_report


class PromotionFailedError(CubeColorError):
    """A conflict edge had an empty allowed list during promotion."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class EliminationFailedError(CubeColorError):
    """No admissible swap cycle exists for an unexpected edge."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class CompletionFailedError(CubeColorError):
    """No valid swap configuration exists for one or more mis-colored prescribed edges."""

    def __init__(self, message, stuck=None):
        super().__init__(message)
        self.stuck = list(stuck or [])


class InvalidConfigError(CubeColorError):
    """A swap configuration no longer matches the coloring it is applied to."""


class FastpathInapplicableError(CubeColorError):
    """The constrained edges do not form a sufficiently spread matching."""


class FastpathFailedError(CubeColorError):
    """An edge of the matching instance forbids every color."""


class ParameterWindowError(CubeColorError):
    """Generator parameters fall outside the window that makes the construction work."""


class CorruptTraceError(CubeColorError):
    """A recorded trace failed re-validation during replay."""


class InputFormatError(CubeColorError):
    """A JSON document does not match the documented wire schema."""
