"""Independent check of the system matrix against the linearised PDEs.

A plane wave ``w0 exp(i k.x + phi t)`` is sampled on a small stencil
patch; spatial derivatives are taken with fourth-order centred
differences and time derivatives become multiplication by ``phi``.  The
discrete PDE residual is then compared with ``M w0``.
"""

from __future__ import annotations

import numpy as np

from ..errors import ParameterError
from ..model import ParameterSet, SteadyState
from .system import WaveProbe, assemble_system_matrix

__all__ = ["planewave_residual_oracle", "linearised_operator"]

_OFFSETS = np.arange(-2, 3)
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def _derivatives(k, h):
    """FD weights applied to ``exp(i k.x)`` at the patch centre.

    Returns the scalar multipliers replacing d/dx, d/dy, d2/dx2, d2/dy2 and
    d2/dxdy.
    """
    ex = np.exp(1j * k[0] * _OFFSETS * h)
    ey = np.exp(1j * k[1] * _OFFSETS * h)
    dx = _D1 @ ex / h
    dy = _D1 @ ey / h
    dxx = _D2 @ ex / h**2
    dyy = _D2 @ ey / h**2
    return dx, dy, dxx, dyy, dx * dy


def linearised_operator(p: ParameterSet, s: SteadyState, phi, dx, dy, dxx, dyy, dxy, w0):
    """Apply the linearised 2D system to a field with given derivative symbols."""
    ux, uy, pr, m, e, f, b = w0
    grad = np.array([dx, dy])
    lap = dxx + dyy
    div_u = dx * ux + dy * uy
    grad_div = np.array([dxx * ux + dxy * uy, dxy * ux + dyy * uy])
    u = np.array([ux, uy])
    mom = (p.rho * phi**2 * u - p.mu * lap * u - (p.mu + p.lam) * grad_div
           + grad * pr - s.sigma_act_lin * grad * m)
    mass = p.C0 * phi * pr + p.alpha_BW * phi * div_u - p.kappa_over_eta * lap * pr
    rm = phi * m - p.D_m * lap * m + s.chi * lap * f
    re = phi * e - s.A_m * m + s.A_e * e + s.A_b * b
    rf = phi * f - p.D_f * lap * f + p.delta_F * f - e + p.xi_f * div_u
    rb = phi * b - lap * b + p.delta_B * b - s.H3 * m
    return np.array([mom[0], mom[1], mass, rm, re, rf, rb], dtype=complex)


def planewave_residual_oracle(p: ParameterSet, s: SteadyState, k_vec, phi, w0, h=None,
                              resolution: float = 0.05):
    """Relative discrepancy ``|r_fd - M w0| / (|M|_F |w0|)``.

    ``h`` defaults to ``resolution / |k|`` (points per wavelength fixed);
    at ``k = 0`` the derivatives vanish and ``h`` is irrelevant.
    """
    k = np.asarray(k_vec, dtype=float).ravel()
    if k.size != 2:
        raise ParameterError("the plane-wave oracle is two-dimensional")
    w0 = np.asarray(w0, dtype=complex).ravel()
    if w0.size != 7:
        raise ParameterError(f"amplitude vector must have 7 entries, got {w0.size}")
    kn = float(np.linalg.norm(k))
    if h is None:
        h = resolution / kn if kn > 0 else 1.0
    M = assemble_system_matrix(p, s, WaveProbe.from_vector(k), phi)
    r_fd = linearised_operator(p, s, complex(phi), *_derivatives(k, h), w0)
    scale = np.linalg.norm(M) * np.linalg.norm(w0)
    return float(np.linalg.norm(r_fd - M @ w0) / scale)
