"""Exception types raised by the planning, certification and simulation layers."""


class FormationError(ValueError):
    """Base class for every error this package raises on bad input."""


class AssumptionViolation(FormationError):
    """The reference formation breaks the non-collinearity or length assumptions."""


class ConstraintViolation(FormationError):
    """A boundary schedule leaves the admissible radial/angular box."""


class SingularJacobian(FormationError):
    pass


class ImproperJacobian(FormationError):
    """Jacobian with negative determinant (orientation reversing)."""


class DegenerateHull(FormationError):
    pass


class OutOfInterval(FormationError):
    pass


class DiscontinuousMission(FormationError):
    pass


class CorridorUnset(FormationError):
    pass


class ConfigError(FormationError):
    """Scenario file could not be turned into a valid run configuration."""


class SafetyViolation(RuntimeError):
    """Raised by strict-mode runs when a step fails a safety check."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"safety violation at t={report.time:.4f}: {', '.join(report.violations)}")
