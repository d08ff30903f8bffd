class ToolkitError(Exception):
    """Base class for every error raised by the toolkit"""


class DimensionMismatch(ToolkitError, ValueError):
    """Matrix or vector shapes are incompatible"""


class NotAComplex(ToolkitError):
    """A composite of consecutive differentials is nonzero"""


class NotAChainMap(ToolkitError):
    """A degreewise map does not commute with the differentials"""


class SignConventionError(ToolkitError):
    """A double complex does not assemble into a total complex"""


class SimplicialIdentityError(ToolkitError):
    """Face and degeneracy matrices violate a simplicial identity"""


class MalformedInput(ToolkitError, ValueError):
    """Input data (JSON, facets, cochain keys, points, supports) is malformed"""


class ResourceBudgetExceeded(ToolkitError):
    """A degree holds more generators than the configured budget allows"""

    def __init__(self, degree, size, budget):
        self.degree = degree
        self.size = size
        self.budget = budget
        super().__init__(
            f"Rank budget exceeded in degree {degree}: "
            f"{size} generators > budget {budget}"
        )


class InvalidCocycle(ToolkitError, ValueError):
    """A Deligne cocycle or tower fails its cocycle conditions"""


class CurvatureError(ToolkitError, ValueError):
    """Curvature requested outside weight = degree, or nonzero where flatness is required"""


class LiftRejected(ToolkitError, ValueError):
    """A form is not closed or has a non-integral period"""

    def __init__(self, message, period_index=None, period=None):
        self.period_index = period_index
        self.period = period
        super().__init__(message)
