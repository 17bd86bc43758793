"""The exceptions raised by the workbench."""

from typing import Mapping, Optional


class WorkbenchError(Exception):
    """Base class of every error raised by the workbench."""


class CircuitError(WorkbenchError, ValueError):
    """A gate or circuit violates its invariants."""


class SimulationError(WorkbenchError, ValueError):
    """A state is used with the wrong representation or width."""


class TranspileError(WorkbenchError):
    """A lowering stage could not produce an equivalent native fragment."""


class RoutingError(TranspileError):
    """The topology cannot connect the requested qubits."""


class NoiseError(WorkbenchError, ValueError):
    """A noise profile is invalid or cannot be applied."""


class FitError(WorkbenchError):
    """A nonlinear fit did not converge."""

    def __init__(
        self,
        message: str,
        /,
        residuals: Optional[Mapping[str, float]] = None,
    ) -> None:
        super().__init__(message)
        self.residuals = dict(residuals or {})

    def __str__(self) -> str:
        if not self.residuals:
            return super().__str__()
        return '%s (%s)' % (
            super().__str__(),
            ', '.join('%s=%.3g' % _ for _ in self.residuals.items()),
        )


class MitigationError(WorkbenchError, ValueError):
    """A mitigation step received unusable input."""


class ConditioningError(MitigationError):
    """An assignment matrix is singular or too ill-conditioned to invert."""


class AdmissibilityError(WorkbenchError, ValueError):
    """A Temperley-Lieb angle lies outside the unitary range."""


class ConfigError(WorkbenchError, ValueError):
    """An experiment configuration failed validation."""
