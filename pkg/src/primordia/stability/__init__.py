"""Linear stability analysis of the homogeneous rest state."""

from .conditions import (
    DEFAULT_K2_MAX,
    CoupledConditions,
    ThetaCoeffs,
    UncoupledConditions,
    a0_of_k2,
    coupled_conditions,
    coupled_theta,
    critical_parameter,
    critical_wavenumber,
    d0_of_k2,
    reduced_target,
    routh_hurwitz_cubic,
    uncoupled_conditions,
)
from .dispersion import DispersionPoint, dispersion, select_argmax_root
from .patternspace import FLAG_NAMES, AxisSpec, PatternSpaceGrid, pattern_space
from .planewave import planewave_residual_oracle
from .system import CharPoly, WaveProbe, assemble_system_matrix, char_poly, inertial_factor

__all__ = [
    "DEFAULT_K2_MAX", "CoupledConditions", "ThetaCoeffs", "UncoupledConditions",
    "a0_of_k2", "d0_of_k2", "coupled_conditions", "coupled_theta", "critical_parameter",
    "critical_wavenumber", "reduced_target", "routh_hurwitz_cubic", "uncoupled_conditions",
    "DispersionPoint", "dispersion", "select_argmax_root",
    "FLAG_NAMES", "AxisSpec", "PatternSpaceGrid", "pattern_space",
    "planewave_residual_oracle",
    "CharPoly", "WaveProbe", "assemble_system_matrix", "char_poly", "inertial_factor",
]
