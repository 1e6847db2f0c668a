"""Exception hierarchy shared by all modules."""


class MonospinError(Exception):
    """Base class for everything raised by this package."""


class DomainError(MonospinError, ValueError):
    """An input is outside the validity window of the model."""


class ConfigError(MonospinError, ValueError):
    """A configuration file could not be parsed or is inconsistent."""


class CalibrationError(MonospinError, ValueError):
    """Published-solution block is missing data or self-inconsistent."""


class SolverError(MonospinError, RuntimeError):
    """Base class for trim-solver failures."""


class NonConvergenceError(SolverError):
    """Newton iteration exhausted its budget."""

    def __init__(self, message, residual_norm=None, last_iterate=None):
        super().__init__(message)
        self.residual_norm = residual_norm
        self.last_iterate = last_iterate


class SingularJacobianError(SolverError):
    """Finite-difference Jacobian is numerically singular."""


class InfeasibleDesignError(MonospinError, RuntimeError):
    """No hover solution could be found for a design point."""


class InfeasibleStartError(InfeasibleDesignError):
    """Local search was started in an infeasible region."""


class DivergenceError(MonospinError, RuntimeError):
    """Time integration produced a non-finite state."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t
