"""Monolithic Newmark / backward-Euler step of linear poroelasticity.

Momentum (Newmark, beta = 1/4, gamma = 1/2) and fluid mass (backward
Euler) are solved together for ``(u, p)`` at the new time.  The mass row
is scaled by ``-1/alpha_BW`` so the system matrix is symmetric:

    [ M/(beta dt^2) + K      -B                          ] [u]
    [ -B^T                   -(C0 Mp + dt k/eta Kp)/a_BW ] [p]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from ..errors import NumericalError
from ..model import ParameterSet, active_stress_coefficient
from .config import SimConfig
from .grid import Grid2D, edge_load, nested_dissection, q1_operators, trapezoid_weights

__all__ = ["MechOperators", "mech_operators", "step_poroelastic", "nodal_divergence", "static_solve",
           "active_stress_field", "NEWMARK_BETA", "NEWMARK_GAMMA"]

NEWMARK_BETA = 0.25
NEWMARK_GAMMA = 0.5


@dataclass(frozen=True)
class MechOperators:
    mass_u: sp.csr_matrix
    stiff_u: sp.csr_matrix
    B: sp.csr_matrix
    mass_p: sp.csr_matrix
    stiff_p: sp.csr_matrix
    free: np.ndarray
    system: sp.csc_matrix
    lu: object
    p_scale: float
    lumped: np.ndarray


def _mech_key(p: ParameterSet):
    return (p.E, p.nu, p.rho, p.C0, p.kappa, p.eta, p.alpha_BW)


@lru_cache(maxsize=8)
def _mech_cached(grid: Grid2D, dt: float, key: tuple, clamped: tuple, pressure_bc: str):
    E, nu, rho, C0, kappa, eta, alpha_BW = key
    p = ParameterSet(E=E, nu=nu, rho=rho, C0=C0, kappa=kappa, eta=eta, alpha_BW=alpha_BW)
    ops = q1_operators(grid, p.mu, p.lam)
    n = grid.n_nodes

    clamped_mask = np.zeros(grid.shape, dtype=bool)
    sigma = np.zeros(grid.shape, dtype=bool)
    for edge in ("bottom", "top", "left", "right"):
        if edge in clamped:
            clamped_mask |= grid.edge_mask(edge)
        else:
            sigma |= grid.edge_mask(edge)
    u_fixed = np.concatenate([clamped_mask.ravel(), clamped_mask.ravel()])
    p_fixed = sigma.ravel() if pressure_bc == "zero" else np.zeros(n, dtype=bool)
    free = np.nonzero(~np.concatenate([u_fixed, p_fixed]))[0]
    # interleave the dofs of each node and number nodes by nested dissection
    rank = np.empty(n, dtype=int)
    rank[nested_dissection(grid)] = np.arange(n)
    free = free[np.lexsort((free // n, rank[free % n]))]

    Auu = ops.mass_u * (rho / (NEWMARK_BETA * dt * dt)) + ops.stiff_u
    storage = ops.mass_p * C0 + ops.stiff_p * (dt * kappa / eta)
    if alpha_BW > 0:
        scale = -1.0 / alpha_BW
        Apu = -ops.B.T
    else:
        scale = -1.0
        Apu = sp.csr_matrix((n, 2 * n))
    App = storage * scale
    Aup = -ops.B
    A = sp.bmat([[Auu, Aup], [Apu, App]], format="csc")
    A = A[free][:, free].tocsc()
    # the matrix is symmetric quasi-definite, so diagonal pivots are safe
    lu = splu(A, permc_spec="NATURAL", diag_pivot_thresh=0.0, options={"SymmetricMode": True})
    return MechOperators(
        mass_u=ops.mass_u * rho, stiff_u=ops.stiff_u, B=ops.B, mass_p=ops.mass_p,
        stiff_p=ops.stiff_p, free=free, system=A, lu=lu, p_scale=scale,
        lumped=trapezoid_weights(grid).ravel(),
    )


def mech_operators(cfg: SimConfig) -> MechOperators:
    return _mech_cached(cfg.grid, cfg.dt, _mech_key(cfg.params), cfg.clamped_edges, cfg.pressure_bc)


def active_stress_field(m, cfg: SimConfig):
    s = active_stress_coefficient(m, cfg.params)
    if cfg.active_stress_offset:
        s = s - active_stress_coefficient(cfg.params.m0, cfg.params)
    return np.asarray(s, dtype=float)


def nodal_divergence(u, ops: MechOperators, grid: Grid2D):
    """Lumped L2 projection of ``div u`` onto the nodes."""
    flat = np.concatenate([u[0].ravel(), u[1].ravel()])
    return (ops.B.T @ flat / ops.lumped).reshape(grid.shape)


def step_poroelastic(state, cfg: SimConfig, m=None):
    """New ``(u, v, a, p)`` at ``t + dt`` with the active stress of ``m``.

    ``m`` defaults to the state's own density.
    """
    grid = cfg.grid
    prm = cfg.params
    ops = mech_operators(cfg)
    n = grid.n_nodes
    dt = cfg.dt
    beta, gamma = NEWMARK_BETA, NEWMARK_GAMMA
    m = state.m if m is None else m

    def flat(vec):
        return np.concatenate([vec[0].ravel(), vec[1].ravel()])

    u_n, v_n, a_n = flat(state.u), flat(state.v), flat(state.a)
    t_new = state.t + dt
    pred = u_n / (beta * dt * dt) + v_n / (beta * dt) + (0.5 / beta - 1.0) * a_n
    rhs_u = ops.mass_u @ pred - ops.B @ active_stress_field(m, cfg).ravel()
    if cfg.traction.s0 != 0:
        rhs_u = rhs_u + edge_load(grid, cfg.traction.edge, cfg.traction.vector(t_new))
    p_n = state.p.ravel()
    if prm.alpha_BW > 0:
        rhs_p = -(ops.B.T @ u_n) - prm.C0 * (ops.mass_p @ p_n) / prm.alpha_BW
    else:
        rhs_p = -prm.C0 * (ops.mass_p @ p_n)
    rhs = np.concatenate([rhs_u, rhs_p])

    x = np.zeros(3 * n)
    b = rhs[ops.free]
    sol = ops.lu.solve(b)
    if not np.all(np.isfinite(sol)):
        raise NumericalError(f"poroelastic solve produced non-finite values at t={t_new:.6g}")
    ref = max(np.linalg.norm(b), 1e-300)
    r = b - ops.system @ sol
    if np.linalg.norm(r) > 1e-10 * ref:
        sol += ops.lu.solve(r)
        r = b - ops.system @ sol
    res = np.linalg.norm(r)
    x[ops.free] = sol
    if res > 1e-8 * ref and res > 1e-12:
        raise NumericalError(f"poroelastic solve residual {res / ref:.3e} at t={t_new:.6g}")

    u_new = x[: 2 * n]
    a_new = (u_new - u_n - dt * v_n) / (beta * dt * dt) - (0.5 / beta - 1.0) * a_n
    v_new = v_n + dt * ((1.0 - gamma) * a_n + gamma * a_new)

    def unflat(vec):
        return np.stack([vec[:n].reshape(grid.shape), vec[n:].reshape(grid.shape)])

    return unflat(u_new), unflat(v_new), unflat(a_new), x[2 * n:].reshape(grid.shape)


def static_solve(cfg: SimConfig, m):
    """Drained elastostatic displacement for density ``m`` and no traction.

    Solves ``K u = -B s_act(m)`` with the configured clamped edges and
    zero pressure; used as the long-time reference for the dynamic solver.
    """
    grid = cfg.grid
    ops = mech_operators(cfg)
    n = grid.n_nodes
    clamped = np.zeros(grid.shape, dtype=bool)
    for edge in cfg.clamped_edges:
        clamped |= grid.edge_mask(edge)
    free = np.nonzero(~np.concatenate([clamped.ravel(), clamped.ravel()]))[0]
    K = ops.stiff_u.tocsr()[free][:, free].tocsc()
    rhs = -(ops.B @ active_stress_field(m, cfg).ravel())
    u = np.zeros(2 * n)
    u[free] = splu(K).solve(rhs[free])
    return np.stack([u[:n].reshape(grid.shape), u[n:].reshape(grid.shape)]), K, rhs[free], free
