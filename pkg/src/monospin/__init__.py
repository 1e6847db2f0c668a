"""Mono-spinner UAV hover analysis and power-optimal design search."""

__version__ = "0.1.0"

from .model import (BaseConstants, Calibration, DesignVector, MassModel,
                    VehicleModel, assemble_inertia, calibrate_from_published,
                    expand_design)
from .hover import HoverState, hover_residual, solve_hover, specific_power
from .optimize import (DesignSpace, EvalResult, SweepGrid, evaluate_design,
                       grid_search, local_search, sweep)

__all__ = [
    "BaseConstants", "Calibration", "DesignVector", "MassModel",
    "VehicleModel", "assemble_inertia", "calibrate_from_published",
    "expand_design", "HoverState", "hover_residual", "solve_hover",
    "specific_power", "DesignSpace", "EvalResult", "SweepGrid",
    "evaluate_design", "grid_search", "local_search", "sweep",
    "__version__",
]
