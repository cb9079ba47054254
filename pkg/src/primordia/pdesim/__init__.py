"""Structured-grid simulator of the coupled poroelasticity-chemotaxis system."""

from .chemotaxis import step_chemotaxis
from .config import SimConfig, TractionLoad
from .coupled import SimulationResult, coupled_step, run_simulation
from .grid import Grid2D
from .io import read_snapshot, write_snapshot
from .poroelastic import static_solve, step_poroelastic
from .state import FieldState, diagnostics, init_state, single_mode_state

__all__ = [
    "Grid2D", "SimConfig", "TractionLoad", "FieldState",
    "init_state", "single_mode_state", "diagnostics",
    "step_chemotaxis", "step_poroelastic", "coupled_step", "run_simulation", "SimulationResult",
    "static_solve", "read_snapshot", "write_snapshot",
]
