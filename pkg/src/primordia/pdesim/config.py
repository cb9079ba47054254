"""Run configuration for the simulator."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

from ..errors import ParameterError
from ..model import ParameterSet
from .grid import EDGES, Grid2D

__all__ = ["TractionLoad", "SimConfig"]


@dataclass(frozen=True)
class TractionLoad:
    """Vertical traction ``(0, s0 sin(pi t / t_hat))`` on one edge."""

    s0: float = 0.0
    t_hat: float = 320.0
    edge: str = "top"

    def __post_init__(self):
        if not self.t_hat > 0:
            raise ParameterError(f"traction period must be positive, got {self.t_hat}")
        if self.edge not in EDGES:
            raise ParameterError(f"unknown traction edge {self.edge!r}")

    def vector(self, t: float):
        return (0.0, self.s0 * math.sin(math.pi * t / self.t_hat))


@dataclass(frozen=True)
class SimConfig:
    """Everything needed to reproduce one run.

    ``clamped_edges`` is the set where displacement vanishes and the fluid
    flux is zero; every other edge is traction-loaded (zero traction unless
    it is ``traction.edge``).  On those edges the pressure is either held at
    zero (``pressure_bc="zero"``) or left flux-free (``"noflux"``).

    With ``active_stress_offset`` the active stress of the base density
    ``m0`` is subtracted, so that the rest state is an equilibrium.
    """

    params: ParameterSet = field(default_factory=ParameterSet)
    grid: Grid2D = field(default_factory=Grid2D)
    dt: float = 0.2
    t_final: float = 520.0
    noise_amplitude: float = 0.01
    seed: int = 0
    output_interval: float = 40.0
    tolerance: float = 1e-6
    max_iters: int = 5
    clamped_edges: tuple = ("bottom",)
    pressure_bc: str = "zero"
    traction: TractionLoad = field(default_factory=TractionLoad)
    saturated_wave: bool = False
    active_stress_offset: bool = True
    linear_solver: str = "direct"
    clip_budget: float = 1e-3

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ParameterError(f"dt must be positive, got {self.dt}")
        if not self.t_final >= 0:
            raise ParameterError(f"t_final must be nonnegative, got {self.t_final}")
        if not self.tolerance > 0:
            raise ParameterError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iters < 1:
            raise ParameterError(f"max_iters must be at least 1, got {self.max_iters}")
        if self.noise_amplitude < 0:
            raise ParameterError("noise amplitude must be nonnegative")
        if not self.output_interval > 0:
            raise ParameterError("output interval must be positive")
        object.__setattr__(self, "clamped_edges", tuple(self.clamped_edges))
        for e in self.clamped_edges:
            if e not in EDGES:
                raise ParameterError(f"unknown clamped edge {e!r}")
        if self.traction.edge in self.clamped_edges and self.traction.s0 != 0:
            raise ParameterError("the traction edge cannot also be clamped")
        if self.pressure_bc not in ("zero", "noflux"):
            raise ParameterError(f"pressure_bc must be 'zero' or 'noflux', got {self.pressure_bc!r}")
        if self.linear_solver not in ("direct", "cg"):
            raise ParameterError(f"linear_solver must be 'direct' or 'cg', got {self.linear_solver!r}")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))

    @property
    def mechanics_inert(self) -> bool:
        """True when nothing can ever set the solid in motion."""
        return self.params.tau == 0 and self.traction.s0 == 0

    def replace(self, **changes) -> "SimConfig":
        return dataclasses.replace(self, **changes)
