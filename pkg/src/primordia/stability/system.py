"""Plane-wave system matrix and the factored characteristic polynomial."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from ..model import ParameterSet, SteadyState

__all__ = ["WaveProbe", "CharPoly", "assemble_system_matrix", "char_poly", "inertial_factor"]


@dataclass(frozen=True)
class WaveProbe:
    """A real wave vector together with its squared norm."""

    k_vec: tuple
    k2: float
    d: int

    @classmethod
    def from_vector(cls, k_vec) -> "WaveProbe":
        k = np.asarray(k_vec, dtype=float).ravel()
        if k.size not in (2, 3):
            raise ParameterError(f"wave vector must have 2 or 3 components, got {k.size}")
        return cls(tuple(float(x) for x in k), float(k @ k), int(k.size))

    @property
    def k(self) -> np.ndarray:
        return np.asarray(self.k_vec)


def assemble_system_matrix(p: ParameterSet, s: SteadyState, w: WaveProbe, phi) -> np.ndarray:
    """Matrix ``M`` with ``M @ (u, p, m, e, f, b) = 0`` for plane waves.

    The unknown ordering is the ``d`` displacement components, pore
    pressure, then the four chemical species.
    """
    if w.d not in (2, 3):
        raise ParameterError(f"dimension must be 2 or 3, got {w.d}")
    d = w.d
    k = w.k
    K = w.k2
    phi = complex(phi)
    n = d + 5
    M = np.zeros((n, n), dtype=complex)

    B = p.rho * phi**2 + p.mu * K
    C = p.C0 * phi + p.kappa_over_eta * K
    M[:d, :d] = (p.mu + p.lam) * np.outer(k, k) + B * np.eye(d)
    M[:d, d] = 1j * k
    M[d, :d] = 1j * p.alpha_BW * phi * k
    M[d, d] = C

    im, ie, i_f, ib = d + 1, d + 2, d + 3, d + 4
    M[:d, im] = -1j * s.sigma_act_lin * k
    M[i_f, :d] = 1j * p.xi_f * k

    M[im, im] = phi + p.D_m * K
    M[im, i_f] = -s.chi * K
    M[ie, im] = -s.A_m
    M[ie, ie] = phi + s.A_e
    M[ie, ib] = s.A_b
    M[i_f, ie] = -1.0
    M[i_f, i_f] = phi + p.D_f * K + p.delta_F
    M[ib, im] = -s.H3
    M[ib, ib] = phi + K + p.delta_B
    return M


def inertial_factor(p: ParameterSet, k2: float) -> np.ndarray:
    """Ascending coefficients of ``rho phi^2 + mu k^2``."""
    return np.array([p.mu * k2, 0.0, p.rho])


@dataclass(frozen=True)
class CharPoly:
    """Coefficients (ascending in ``phi``) of ``P1 + P2 * P3``.

    ``a`` belongs to the chemotaxis block, ``c`` to the poromechanics
    block, and ``b = coupling_const * bhat`` to the mechano-chemical
    cross term.  ``full`` is the degree-7 polynomial whose roots carry the
    stability information.
    """

    k2: float
    a: np.ndarray
    b: np.ndarray
    bhat: np.ndarray
    c: np.ndarray
    full: np.ndarray
    coupling_const: float

    def __call__(self, phi):
        return np.polynomial.polynomial.polyval(phi, self.full)


def char_poly(p: ParameterSet, s: SteadyState, k2: float) -> CharPoly:
    """Characteristic polynomial coefficients at squared wave number ``k2``."""
    K = float(k2)
    if K < 0:
        raise ParameterError(f"k2 must be nonnegative, got {k2}")
    Dm, Df, dF, dB = p.D_m, p.D_f, p.delta_F, p.delta_B
    Ae, Am, Ab, H3, chi = s.A_e, s.A_m, s.A_b, s.H3, s.chi
    ke = p.kappa_over_eta
    pw = p.p_wave_modulus

    a0 = (Dm * Df * Ae * K**3
          + (Dm * Df * dB + Dm * dF) * Ae * K**2 - chi * Am * K**2
          + (Dm * dB * dF * Ae + chi * H3 * Ab - chi * Am * dB) * K)
    a1 = (Dm * Df * K**3
          + ((Dm * Df + Dm + Df) * Ae + Dm * Df * dB + Dm * dF) * K**2
          + ((Dm * dB + Df * dB + Dm * dF + dF) * Ae + Dm * dB * dF - chi * Am) * K
          + dB * dF * Ae)
    a2 = ((Dm * Df + Dm + Df) * K**2
          + (Dm * dB + (Dm + Df + 1.0) * Ae + Df * dB + Dm * dF + dF) * K
          + (dB + dF) * Ae + dB * dF)
    a3 = (Dm + Df + 1.0) * K + dB + dF + Ae
    a = np.array([a0, a1, a2, a3, 1.0])

    c = np.array([
        ke * pw * K**2,
        (p.C0 * pw + p.alpha_BW) * K,
        p.rho * ke * K,
        p.rho * p.C0,
    ])

    # P1 = coupling * (C0 phi + ke K)(phi + A_e)(phi + K + delta_B)
    bhat = np.array([
        ke * Ae * (K + dB) * K,
        ke * K**2 + ((p.C0 + ke) * Ae + ke * dB) * K + p.C0 * Ae * dB,
        (p.C0 + ke) * K + p.C0 * (Ae + dB),
        p.C0,
    ])
    coupling = -p.xi_f * s.sigma_act_lin * chi * K**2
    b = coupling * bhat

    full = np.convolve(a, c)
    full[:4] += b
    return CharPoly(k2=K, a=a, b=b, bhat=bhat, c=c, full=full, coupling_const=coupling)
