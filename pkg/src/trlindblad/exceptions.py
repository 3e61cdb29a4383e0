"""Exception hierarchy shared by all modules."""


class TRLindbladError(Exception):
    """Base class for every error raised by the package."""


class ShapeError(TRLindbladError, ValueError):
    pass


class SizeError(TRLindbladError, ValueError):
    """Requested system exceeds the configured maximum size."""


class StateError(TRLindbladError, ValueError):
    """Matrix is not a valid density matrix within tolerance."""


class ParameterError(TRLindbladError, ValueError):
    pass


class DomainError(TRLindbladError, ValueError):
    """Time lies outside the domain where a quantity is defined."""


class NumericalError(TRLindbladError, RuntimeError):
    pass


class IntegrationDivergedError(NumericalError):
    pass


class BoundaryConditionError(TRLindbladError):
    """A time-rescaling boundary condition is violated.

    Attributes:
        condition: label of the first violated condition, e.g. ``"iii"``.
        report: the full :class:`~trlindblad.rescaling.ValidationReport`.
    """

    def __init__(self, condition, report):
        self.condition = condition
        self.report = report
        super().__init__(f"boundary condition ({condition}) violated: "
                         f"{report.conditions[condition].detail}")
