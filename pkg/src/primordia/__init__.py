"""Poroelasticity-chemotaxis model of feather primordia patterning.

Subpackages: :mod:`primordia.stability` (linear stability analysis),
:mod:`primordia.pdesim` (2D simulator) and :mod:`primordia.growth`
(finite-growth kinematics).
"""

from .errors import ConfigError, NoSignChangeError, NumericalError, ParameterError
from .model import ParameterSet, SteadyState, hill, priming_wave, steady_state
from .roots import poly_roots

__version__ = "0.1.0"

__all__ = [
    "ParameterSet", "SteadyState", "steady_state", "hill", "priming_wave", "poly_roots",
    "ConfigError", "NoSignChangeError", "NumericalError", "ParameterError",
]
