"""Exception and warning types shared across the package."""

from __future__ import annotations


class CapillarError(Exception):
    """Base class for all domain errors raised by this package."""


class NonPositiveVolume(CapillarError):
    """A specific volume was zero or negative."""


class NonPositiveTemperature(CapillarError):
    """An evaluated temperature came out non-positive (or non-finite)."""


class DegenerateInterfaceEos(CapillarError):
    """The interfacial temperature map is not invertible (theta == 0)."""


class ZeroMixtureEntropy(CapillarError):
    """Entropy fractions were requested at a state with zero mixture entropy."""


class ClosureInconsistent(CapillarError):
    """The interfacial-area value of a state disagrees with its geometric closure."""


class MaxIterExceeded(CapillarError):
    """The equilibrium iteration did not converge within the iteration cap."""


class SingularJacobian(CapillarError):
    """Newton hit a (numerically) singular Jacobian; try another guess."""


class InfeasibleRegion(CapillarError):
    """Equilibrium iterates left the admissible region (fraction floors, gamma_i < 0)."""


class ConvergenceFailure(CapillarError):
    """The dense eigensolver failed to converge."""


class CflViolation(CapillarError):
    """A hyperbolic step was requested with a time step above the CFL bound."""


class StateInvalid(CapillarError):
    """Field values became non-finite or left the physical domain."""


class SubcycleLimit(CapillarError):
    """Source-term stiffness would require more than the allowed number of substeps."""


class ConfigInvalid(CapillarError):
    """A configuration file failed schema validation; the message names the key."""


class SolverAbort(CapillarError):
    """A time-marching run aborted; carries a diagnostics dict for the dump file."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class NegativeSurfaceTension(UserWarning):
    """Surface tension went negative; tolerated in dynamics, infeasible in equilibrium."""
