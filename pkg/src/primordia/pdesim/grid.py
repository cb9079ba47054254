"""Uniform vertex-centred grid and the discrete operators built on it.

Nodes sit at ``(i hx, j hy)`` for ``i = 0..nx`` and ``j = 0..ny``; nodal
arrays have shape ``(ny + 1, nx + 1)`` and are flattened row-major, so the
flat index is ``j (nx + 1) + i``.

Species use a finite-volume reading of the grid: every node owns the dual
cell of its trapezoid weight, and neighbouring nodes exchange fluxes across
the dual faces.  Mechanics uses bilinear (Q1) elements on the primal cells,
which share the same nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..errors import ParameterError

__all__ = ["Grid2D", "EDGES", "trapezoid_weights", "fv_laplacian", "q1_operators", "edge_load"]

EDGES = ("bottom", "top", "left", "right")


@dataclass(frozen=True)
class Grid2D:
    Lx: float = 20.0
    Ly: float = 20.0
    nx: int = 128
    ny: int = 128

    def __post_init__(self):
        if not (self.Lx > 0 and self.Ly > 0):
            raise ParameterError(f"domain lengths must be positive, got ({self.Lx}, {self.Ly})")
        if self.nx < 8 or self.ny < 8:
            raise ParameterError(f"need at least 8 cells per direction, got ({self.nx}, {self.ny})")

    @property
    def hx(self) -> float:
        return self.Lx / self.nx

    @property
    def hy(self) -> float:
        return self.Ly / self.ny

    @property
    def shape(self):
        return (self.ny + 1, self.nx + 1)

    @property
    def n_nodes(self) -> int:
        return (self.nx + 1) * (self.ny + 1)

    def coordinates(self):
        """Nodal ``(X, Y)`` arrays of shape :attr:`shape`."""
        x = np.linspace(0.0, self.Lx, self.nx + 1)
        y = np.linspace(0.0, self.Ly, self.ny + 1)
        return np.meshgrid(x, y)

    def edge_mask(self, edge: str) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        if edge == "bottom":
            mask[0, :] = True
        elif edge == "top":
            mask[-1, :] = True
        elif edge == "left":
            mask[:, 0] = True
        elif edge == "right":
            mask[:, -1] = True
        else:
            raise ParameterError(f"unknown edge {edge!r}; expected one of {EDGES}")
        return mask


def _weights_1d(n, h):
    w = np.full(n + 1, h)
    w[0] = w[-1] = 0.5 * h
    return w


def trapezoid_weights(grid: Grid2D) -> np.ndarray:
    """Dual-cell areas (trapezoid quadrature weights), shape :attr:`Grid2D.shape`."""
    return np.outer(_weights_1d(grid.ny, grid.hy), _weights_1d(grid.nx, grid.hx))


def _stiffness_1d(n, h):
    main = np.full(n + 1, 2.0)
    main[0] = main[-1] = 1.0
    off = -np.ones(n)
    return sp.diags([off, main, off], [-1, 0, 1]) / h


def fv_laplacian(grid: Grid2D) -> sp.csr_matrix:
    """Positive semidefinite five-point operator with zero-flux boundaries.

    ``(L c)_n`` is the net diffusive outflow from node ``n``'s dual cell for
    unit diffusivity, so ``V dc/dt = -L c`` conserves ``sum(V c)``.
    """
    wx = sp.diags(_weights_1d(grid.nx, grid.hx))
    wy = sp.diags(_weights_1d(grid.ny, grid.hy))
    return (sp.kron(_stiffness_1d(grid.ny, grid.hy), wx)
            + sp.kron(wy, _stiffness_1d(grid.nx, grid.hx))).tocsr()


_GAUSS = np.array([-1.0, 1.0]) / np.sqrt(3.0)
_LOCAL = np.array([[0, 0], [1, 0], [1, 1], [0, 1]])


def _q1_reference(hx, hy):
    """Shape values and physical gradients at the 2x2 Gauss points."""
    pts = [(0.5 * (1 + a), 0.5 * (1 + b)) for b in _GAUSS for a in _GAUSS]
    N, dNx, dNy = [], [], []
    for xi, et in pts:
        sx = np.where(_LOCAL[:, 0] == 1, xi, 1 - xi)
        sy = np.where(_LOCAL[:, 1] == 1, et, 1 - et)
        dsx = np.where(_LOCAL[:, 0] == 1, 1.0, -1.0) / hx
        dsy = np.where(_LOCAL[:, 1] == 1, 1.0, -1.0) / hy
        N.append(sx * sy)
        dNx.append(dsx * sy)
        dNy.append(sx * dsy)
    weight = 0.25 * hx * hy
    return np.array(N), np.array(dNx), np.array(dNy), weight


def _connectivity(grid: Grid2D):
    j, i = np.meshgrid(np.arange(grid.ny), np.arange(grid.nx), indexing="ij")
    base = (j * (grid.nx + 1) + i).ravel()
    stride = grid.nx + 1
    return np.stack([base, base + 1, base + 1 + stride, base + stride], axis=1)


def _scatter(conn_rows, conn_cols, local, shape):
    rows = np.repeat(conn_rows[:, :, None], conn_cols.shape[1], axis=2)
    cols = np.repeat(conn_cols[:, None, :], conn_rows.shape[1], axis=1)
    vals = np.broadcast_to(local, rows.shape)
    return sp.coo_matrix((vals.ravel(), (rows.ravel(), cols.ravel())), shape=shape).tocsr()


@dataclass(frozen=True)
class Q1Operators:
    """Assembled bilinear-element matrices.

    Displacement unknowns are blocked as ``[u_x (all nodes), u_y (all nodes)]``.
    ``B[(c, a), q] = int phi_q d_c phi_a`` so that ``B.T @ u`` tests
    ``div u`` and ``B @ s`` is the load of an isotropic stress ``s I``.
    """

    mass_u: sp.csr_matrix
    stiff_u: sp.csr_matrix
    B: sp.csr_matrix
    mass_p: sp.csr_matrix
    stiff_p: sp.csr_matrix


def q1_operators(grid: Grid2D, mu: float, lam: float) -> Q1Operators:
    N, dNx, dNy, w = _q1_reference(grid.hx, grid.hy)
    grads = (dNx, dNy)
    conn = _connectivity(grid)
    n = grid.n_nodes

    mass = w * np.einsum("ga,gb->ab", N, N)
    lap = w * (np.einsum("ga,gb->ab", dNx, dNx) + np.einsum("ga,gb->ab", dNy, dNy))

    blocks = {}
    for c in range(2):
        for d in range(2):
            kl = w * (lam * np.einsum("ga,gb->ab", grads[c], grads[d])
                      + mu * np.einsum("ga,gb->ab", grads[d], grads[c]))
            if c == d:
                kl = kl + mu * lap
            blocks[c, d] = kl
    local_K = np.block([[blocks[0, 0], blocks[0, 1]], [blocks[1, 0], blocks[1, 1]]])
    conn_u = np.hstack([conn, conn + n])
    K = _scatter(conn_u, conn_u, local_K, (2 * n, 2 * n))

    local_M = np.block([[mass, np.zeros((4, 4))], [np.zeros((4, 4)), mass]])
    M = _scatter(conn_u, conn_u, local_M, (2 * n, 2 * n))

    local_B = np.vstack([w * np.einsum("ga,gq->aq", dNx, N), w * np.einsum("ga,gq->aq", dNy, N)])
    B = _scatter(conn_u, conn, local_B, (2 * n, n))

    return Q1Operators(
        mass_u=M, stiff_u=K, B=B,
        mass_p=_scatter(conn, conn, mass, (n, n)),
        stiff_p=_scatter(conn, conn, lap, (n, n)),
    )


def edge_load(grid: Grid2D, edge: str, traction) -> np.ndarray:
    """Consistent nodal load of a constant traction vector on one edge."""
    n = grid.n_nodes
    f = np.zeros(2 * n)
    mask = grid.edge_mask(edge).ravel()
    h = grid.hx if edge in ("bottom", "top") else grid.hy
    count = int(mask.sum())
    wts = np.full(count, h)
    wts[0] = wts[-1] = 0.5 * h
    idx = np.nonzero(mask)[0]
    f[idx] = traction[0] * wts
    f[n + idx] = traction[1] * wts
    return f


def nested_dissection(grid: Grid2D, leaf: int = 64) -> np.ndarray:
    """Geometric nested-dissection ordering of the grid nodes.

    Subdomains are split across their longer side by a grid line, which is
    numbered after both halves.  Keeps the fill of sparse factorizations
    near ``O(N log N)``.
    """
    stride = grid.nx + 1
    out = []

    def visit(j0, j1, i0, i1):
        nj, ni = j1 - j0, i1 - i0
        if nj * ni <= leaf or min(nj, ni) < 3:
            jj, ii = np.meshgrid(np.arange(j0, j1), np.arange(i0, i1), indexing="ij")
            out.append((jj * stride + ii).ravel())
        elif ni >= nj:
            c = (i0 + i1) // 2
            visit(j0, j1, i0, c)
            visit(j0, j1, c + 1, i1)
            out.append(np.arange(j0, j1) * stride + c)
        else:
            c = (j0 + j1) // 2
            visit(j0, c, i0, i1)
            visit(c + 1, j1, i0, i1)
            out.append(c * stride + np.arange(i0, i1))

    visit(0, grid.ny + 1, 0, grid.nx + 1)
    return np.concatenate(out)
