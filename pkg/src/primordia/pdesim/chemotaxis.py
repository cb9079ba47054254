"""IMEX step of the chemotaxis system.

Diffusion and linear decay are implicit (backward Euler).  The chemotactic
flux, advection by the solid velocity and the nonlinear sources use the
previous-step fields.  The epithelium equation is linear in ``e`` for
frozen ``m``, ``b`` and ``w`` and is advanced with its exact solution over
the step, which keeps ``e`` in ``[0, 1]``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import cg, splu

from ..errors import NumericalError
from ..model import activation_rates, hill, priming_wave
from .config import SimConfig
from .grid import Grid2D, fv_laplacian, trapezoid_weights

__all__ = ["ChemOperators", "chem_operators", "step_chemotaxis", "chemotactic_flux_divergence",
           "upwind_gradient", "explicit_sources"]


@dataclass(frozen=True)
class _Solver:
    matrix: sp.csr_matrix
    lu: object

    def solve(self, rhs, method: str):
        if method == "direct":
            return self.lu.solve(rhs)
        n = rhs.size
        x, info = cg(self.matrix, rhs, rtol=1e-9, atol=0.0, maxiter=10 * n)
        if info != 0:
            res = np.linalg.norm(self.matrix @ x - rhs) / max(np.linalg.norm(rhs), 1e-300)
            raise NumericalError(f"CG did not converge in {10 * n} iterations (relative residual {res:.3e})")
        return x


@dataclass(frozen=True)
class ChemOperators:
    volume: np.ndarray
    laplacian: sp.csr_matrix
    m: _Solver
    f: _Solver
    b: _Solver


def _solver(A):
    A = A.tocsc()
    return _Solver(A.tocsr(), splu(A))


@lru_cache(maxsize=16)
def chem_operators(grid: Grid2D, dt: float, D_m: float, D_f: float, delta_F: float, delta_B: float):
    V = trapezoid_weights(grid).ravel()
    L = fv_laplacian(grid)
    Vd = sp.diags(V)
    return ChemOperators(
        volume=V,
        laplacian=L,
        m=_solver(Vd / dt + D_m * L),
        f=_solver(Vd * (1.0 / dt + delta_F) + D_f * L),
        b=_solver(Vd * (1.0 / dt + delta_B) + L),
    )


def chemotactic_flux_divergence(m, f, grid: Grid2D, alpha, gamma_exp):
    """Net chemotactic outflow from every dual cell.

    The flux across a dual face is ``alpha g(m_up) df/h`` times the face
    length, with ``g(m) = m exp(-gamma m)`` taken from the upwind node
    (cells move up the ``f`` gradient).  Also returns the largest
    chemotactic speed for the CFL check.
    """
    g = m * np.exp(-gamma_exp * m)
    out = np.zeros_like(m)
    wy = np.full(grid.ny + 1, 1.0)
    wy[0] = wy[-1] = 0.5
    wx = np.full(grid.nx + 1, 1.0)
    wx[0] = wx[-1] = 0.5

    dfx = np.diff(f, axis=1) / grid.hx
    gx = np.where(dfx > 0, g[:, :-1], g[:, 1:])
    Fx = alpha * gx * dfx * (grid.hy * wy)[:, None]
    out[:, :-1] += Fx
    out[:, 1:] -= Fx

    dfy = np.diff(f, axis=0) / grid.hy
    gy = np.where(dfy > 0, g[:-1, :], g[1:, :])
    Fy = alpha * gy * dfy * (grid.hx * wx)[None, :]
    out[:-1, :] += Fy
    out[1:, :] -= Fy

    speed = alpha * np.exp(-gamma_exp * m)
    vmax = max(float(np.max(np.abs(dfx) * np.maximum(speed[:, :-1], speed[:, 1:]), initial=0.0)),
               float(np.max(np.abs(dfy) * np.maximum(speed[:-1, :], speed[1:, :]), initial=0.0)))
    return out, vmax


def upwind_gradient(c, vel, grid: Grid2D):
    """``vel . grad c`` with first-order upwind differences."""
    back_x = np.zeros_like(c)
    fwd_x = np.zeros_like(c)
    dx = np.diff(c, axis=1) / grid.hx
    back_x[:, 1:] = dx
    back_x[:, 0] = dx[:, 0]
    fwd_x[:, :-1] = dx
    fwd_x[:, -1] = dx[:, -1]
    back_y = np.zeros_like(c)
    fwd_y = np.zeros_like(c)
    dy = np.diff(c, axis=0) / grid.hy
    back_y[1:, :] = dy
    back_y[0, :] = dy[0, :]
    fwd_y[:-1, :] = dy
    fwd_y[-1, :] = dy[-1, :]
    vx, vy = vel
    return (np.where(vx > 0, vx * back_x, vx * fwd_x)
            + np.where(vy > 0, vy * back_y, vy * fwd_y))


@dataclass(frozen=True)
class ExplicitSources:
    """u-independent parts of the step, computed once per time step."""

    rhs_m: np.ndarray
    rhs_f: np.ndarray
    rhs_b: np.ndarray
    e_new: np.ndarray
    cfl: float


def explicit_sources(state, cfg: SimConfig) -> ExplicitSources:
    p = cfg.params
    grid = cfg.grid
    dt = cfg.dt
    ops = chem_operators(grid, dt, p.D_m, p.D_f, p.delta_F, p.delta_B)
    V = ops.volume.reshape(grid.shape)
    m, e, f, b = state.m, state.e, state.f, state.b

    if cfg.saturated_wave:
        w = p.omega1
    else:
        _, Y = grid.coordinates()
        w = priming_wave(Y, state.t, p)
    k_on, k_off = activation_rates(m, b, w, p)
    rate = k_on + k_off
    with np.errstate(invalid="ignore", divide="ignore"):
        e_inf = np.where(rate > 0, k_on / rate, e)
    e_new = e_inf + (e - e_inf) * np.exp(-rate * dt)

    div_chem, vmax = chemotactic_flux_divergence(m, f, grid, p.alpha, p.gamma_exp)
    h = min(grid.hx, grid.hy)
    return ExplicitSources(
        rhs_m=V * m / dt - div_chem,
        rhs_f=V * (f / dt + e),
        rhs_b=V * (b / dt + hill(m, p.K3, p.P3) * m),
        e_new=e_new,
        cfl=dt * vmax / h,
    )


def step_chemotaxis(state, cfg: SimConfig, velocity=None, div_u=None, sources: ExplicitSources | None = None):
    """Advance ``(m, e, f, b)`` by one step.

    ``velocity`` (shape ``(2, ny+1, nx+1)``) and ``div_u`` (nodal) come from
    the mechanics; ``None`` means the solid is at rest.  Returns the new
    ``(m, e, f, b)``, the number of clipped negative values of ``m`` and
    ``b``, and the chemotactic CFL number of the step.
    """
    p = cfg.params
    grid = cfg.grid
    ops = chem_operators(grid, cfg.dt, p.D_m, p.D_f, p.delta_F, p.delta_B)
    V = ops.volume.reshape(grid.shape)
    src = sources if sources is not None else explicit_sources(state, cfg)
    if src.cfl > 0.5:
        # fixed text so the default filter reports it once per call site
        warnings.warn("chemotactic CFL number exceeds 0.5; see the 'cfl' diagnostic",
                      RuntimeWarning, stacklevel=2)

    rhs_m, rhs_f, rhs_b = src.rhs_m, src.rhs_f, src.rhs_b
    if velocity is not None and np.any(velocity):
        rhs_m = rhs_m - V * upwind_gradient(state.m, velocity, grid)
        rhs_f = rhs_f - V * upwind_gradient(state.f, velocity, grid)
        rhs_b = rhs_b - V * upwind_gradient(state.b, velocity, grid)
    if div_u is not None and p.xi_f != 0:
        rhs_f = rhs_f - V * p.xi_f * div_u

    # solve for increments: a uniform state then gives an exactly zero
    # right-hand side instead of round-off that patterning would amplify
    method = cfg.linear_solver

    def advance(solver, rhs, old):
        flat = old.ravel()
        return old + solver.solve(rhs.ravel() - solver.matrix @ flat, method).reshape(grid.shape)

    m = advance(ops.m, rhs_m, state.m)
    f = advance(ops.f, rhs_f, state.f)
    b = advance(ops.b, rhs_b, state.b)

    neg_m = m < 0
    neg_b = b < 0
    clipped = int(neg_m.sum() + neg_b.sum())
    if clipped:
        m = np.where(neg_m, 0.0, m)
        b = np.where(neg_b, 0.0, b)
        if clipped > cfg.clip_budget * m.size:
            raise NumericalError(
                f"{clipped} negative values clipped at t={state.t + cfg.dt:.6g}, "
                f"above the budget of {cfg.clip_budget:.1%} of nodes")
    e = src.e_new
    if e.min() < -1e-12 or e.max() > 1 + 1e-12:
        raise NumericalError("epithelium state left [0, 1]")
    return m, np.clip(e, 0.0, 1.0), f, b, clipped, src.cfl
