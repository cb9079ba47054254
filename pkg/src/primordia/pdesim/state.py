"""Field containers, initial data and grid diagnostics."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from ..model import activation_rates, hill, priming_wave
from .config import SimConfig
from .grid import Grid2D, trapezoid_weights

__all__ = ["FieldState", "init_state", "single_mode_state", "diagnostics", "make_rng", "SCALAR_FIELDS"]

SCALAR_FIELDS = ("p", "m", "e", "f", "b")


@dataclass
class FieldState:
    """Nodal fields; vector fields carry a leading axis of length 2."""

    t: float
    u: np.ndarray
    v: np.ndarray
    a: np.ndarray
    p: np.ndarray
    m: np.ndarray
    e: np.ndarray
    f: np.ndarray
    b: np.ndarray
    outer_iterations: int = 0
    clipped: int = 0
    extras: dict = field(default_factory=dict)

    def copy(self) -> "FieldState":
        arrays = {k: getattr(self, k).copy() for k in ("u", "v", "a", "p", "m", "e", "f", "b")}
        return dataclasses.replace(self, extras=dict(self.extras), **arrays)


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox stream; identical seeds give identical noise."""
    return np.random.Generator(np.random.Philox(int(seed)))


def _rest_species(m_base, w, cfg: SimConfig):
    p = cfg.params
    b = hill(m_base, p.K3, p.P3) * m_base / p.delta_B
    k_on, k_off = activation_rates(m_base, b, w, p)
    total = k_on + k_off
    e = np.divide(k_on, total, out=np.zeros_like(np.asarray(total, dtype=float)), where=total > 0)
    return e, e / p.delta_F, b


def _wave(cfg: SimConfig, t: float):
    grid = cfg.grid
    if cfg.saturated_wave:
        return np.full(grid.shape, cfg.params.omega1)
    _, Y = grid.coordinates()
    return priming_wave(Y, t, cfg.params)


def _empty(cfg: SimConfig, m):
    shape = cfg.grid.shape
    m = np.asarray(m, dtype=float)
    w = _wave(cfg, 0.0)
    base = np.full(shape, cfg.params.m0)
    e, f, b = _rest_species(base, w, cfg)
    zeros2 = np.zeros((2,) + shape)
    return FieldState(t=0.0, u=zeros2.copy(), v=zeros2.copy(), a=zeros2.copy(),
                      p=np.zeros(shape), m=m, e=np.broadcast_to(e, shape).copy(),
                      f=np.broadcast_to(f, shape).copy(), b=np.broadcast_to(b, shape).copy())


def init_state(cfg: SimConfig) -> FieldState:
    """Rest state with i.i.d. ``U(-A, A)`` noise on ``m``.

    ``e``, ``f`` and ``b`` are the rest values for the base density ``m0``
    and the priming wave at ``t = 0`` (or saturated, if configured).
    """
    m0 = cfg.params.m0
    noise = make_rng(cfg.seed).uniform(-1.0, 1.0, size=cfg.grid.shape)
    m = m0 + cfg.noise_amplitude * noise
    return _empty(cfg, np.maximum(m, 0.0))


def single_mode_state(cfg: SimConfig, nx_mode: int, ny_mode: int = 0, amplitude: float = 1e-6) -> FieldState:
    """Rest state plus ``amplitude m0 cos(pi nx x / Lx) cos(pi ny y / Ly)`` on ``m``.

    The cosine modes are exact eigenvectors of the zero-flux discrete
    Laplacian, with continuous wave number ``k^2 = (pi nx/Lx)^2 + (pi ny/Ly)^2``.
    """
    X, Y = cfg.grid.coordinates()
    g = cfg.grid
    mode = np.cos(np.pi * nx_mode * X / g.Lx) * np.cos(np.pi * ny_mode * Y / g.Ly)
    return _empty(cfg, cfg.params.m0 * (1.0 + amplitude * mode))


def diagnostics(state: FieldState, grid: Grid2D) -> dict:
    """Trapezoid integrals, variance of ``m`` and extrema of every field."""
    W = trapezoid_weights(grid)
    area = W.sum()
    out = {"t": state.t}
    mass = float(np.sum(W * state.m))
    mean = mass / area
    out["int_m"] = mass
    out["var_m"] = float(np.sum(W * (state.m - mean) ** 2) / area)
    for name in SCALAR_FIELDS:
        arr = getattr(state, name)
        out[f"min_{name}"] = float(arr.min())
        out[f"max_{name}"] = float(arr.max())
    for c, name in enumerate(("u1", "u2")):
        out[f"min_{name}"] = float(state.u[c].min())
        out[f"max_{name}"] = float(state.u[c].max())
    out["outer_iterations"] = state.outer_iterations
    out["clipped"] = state.clipped
    out["cfl"] = float(state.extras.get("cfl", 0.0))
    return out
