"""Finite-strain growth kinematics and constitutive algebra.

Tensors are handled as 3x3 arrays; two-dimensional inputs (2x2) are
embedded with a unit out-of-plane entry and results are returned in the
dimension of the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = [
    "GrowthFactors",
    "DeformationState",
    "PhaseFractions",
    "growth_tensor",
    "gamma_evolution",
    "gamma_rates",
    "elastic_decomposition",
    "neo_hookean_stress",
    "neo_hookean_energy",
    "fluid_stress",
    "darcy_pullback",
    "mass_source_fluid",
    "solid_mass_growth_rate",
    "growth_rate_constraint_residual",
    "chemotaxis_pullback_tensor",
    "psi_for_incompressibility",
    "dilation_measure",
]

_ORTHO_TOL = 1e-12


def _embed(A):
    A = np.asarray(A, dtype=float)
    if A.shape == (3, 3):
        return A.copy(), 3
    if A.shape == (2, 2):
        out = np.eye(3)
        out[:2, :2] = A
        return out, 2
    raise ParameterError(f"expected a 2x2 or 3x3 tensor, got shape {A.shape}")


def _restrict(A, dim):
    return A[:dim, :dim].copy() if dim == 2 else A


def _checked_inverse(A, what):
    det = np.linalg.det(A)
    if not np.isfinite(det) or abs(det) < 1e-300 or np.linalg.cond(A) > 1e14:
        raise ParameterError(f"{what} is singular")
    return np.linalg.inv(A), det


@dataclass(frozen=True)
class GrowthFactors:
    """Growth stretches ``gamma_i`` along an orthonormal frame ``k_i``."""

    gamma1: float = 0.0
    gamma2: float = 0.0
    gamma3: float = 0.0
    k1: tuple = (1.0, 0.0, 0.0)
    k2: tuple = (0.0, 1.0, 0.0)
    k3: tuple = (0.0, 0.0, 1.0)
    delta1: float = 0.0
    delta2: float = 0.0
    delta3: float = 0.0
    dim: int = 3

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ParameterError(f"dim must be 2 or 3, got {self.dim}")
        for name in ("gamma1", "gamma2", "gamma3"):
            if not getattr(self, name) >= 0:
                raise ParameterError(f"{name} must be nonnegative, got {getattr(self, name)}")
        K = self.frame
        if not np.allclose(K @ K.T, np.eye(3), atol=_ORTHO_TOL, rtol=0):
            raise ParameterError("growth directions must be orthonormal")
        if self.dim == 2 and (abs(K[0, 2]) > _ORTHO_TOL or abs(K[1, 2]) > _ORTHO_TOL):
            raise ParameterError("in 2D, k1 and k2 must lie in the plane")

    @property
    def frame(self) -> np.ndarray:
        return np.array([self.k1, self.k2, self.k3], dtype=float)

    @property
    def gammas(self):
        return np.array([self.gamma1, self.gamma2, self.gamma3])


def growth_tensor(g: GrowthFactors) -> np.ndarray:
    """``F_g = I + sqrt(g1) k1 k1 + sqrt(g2) k2 k2 + g3 k3 k3``.

    The out-of-plane term is dropped in 2D and a 2x2 tensor is returned.
    """
    K = g.frame
    Fg = np.eye(3)
    Fg += np.sqrt(g.gamma1) * np.outer(K[0], K[0])
    Fg += np.sqrt(g.gamma2) * np.outer(K[1], K[1])
    if g.dim == 3:
        Fg += g.gamma3 * np.outer(K[2], K[2])
    return _restrict(Fg, g.dim)


def _saturation(m):
    return m / (1.0 + m * m)


def gamma_evolution(t, m, g: GrowthFactors) -> GrowthFactors:
    """Growth factors at time ``t`` for density ``m``.

    3D: ``g1 = g2 = delta1 t`` and ``g3 = delta2 t + delta3 m/(1+m^2)``;
    2D: ``g1 = g2 = delta2 t + delta3 m/(1+m^2)``.
    """
    if t < 0 or m < 0:
        raise ParameterError(f"need t >= 0 and m >= 0, got t={t}, m={m}")
    sat = g.delta3 * _saturation(m)
    if g.dim == 3:
        new = (g.delta1 * t, g.delta1 * t, g.delta2 * t + sat)
    else:
        new = (g.delta2 * t + sat, g.delta2 * t + sat, 0.0)
    return GrowthFactors(*new, g.k1, g.k2, g.k3, g.delta1, g.delta2, g.delta3, g.dim)


def gamma_rates(m, dm_dt, g: GrowthFactors) -> np.ndarray:
    """Time derivatives of the growth factors from :func:`gamma_evolution`."""
    chain = g.delta3 * (1.0 - m * m) / (1.0 + m * m) ** 2 * dm_dt
    if g.dim == 3:
        return np.array([g.delta1, g.delta1, g.delta2 + chain])
    return np.array([g.delta2 + chain, g.delta2 + chain, 0.0])


@dataclass(frozen=True)
class DeformationState:
    """Kinematic bundle of ``F = F_e F_g``, all stored as 3x3."""

    F: np.ndarray
    F_g: np.ndarray
    F_e: np.ndarray
    J: float
    J_g: float
    J_e: float
    C: np.ndarray
    B_e: np.ndarray
    dim: int = 3


def elastic_decomposition(F, F_g) -> DeformationState:
    """Split ``F`` into elastic and growth parts, ``F_e = F F_g^{-1}``."""
    F3, dim = _embed(F)
    Fg3, dim_g = _embed(F_g)
    if dim != dim_g:
        raise ParameterError("F and F_g must have the same dimension")
    Fg_inv, J_g = _checked_inverse(Fg3, "growth tensor")
    J = np.linalg.det(F3)
    if not J > 0:
        raise ParameterError(f"det F must be positive, got {J}")
    if not J_g > 0:
        raise ParameterError(f"det F_g must be positive, got {J_g}")
    Fe = F3 @ Fg_inv
    return DeformationState(F=F3, F_g=Fg3, F_e=Fe, J=float(J), J_g=float(J_g),
                            J_e=float(np.linalg.det(Fe)), C=F3.T @ F3, B_e=Fe @ Fe.T, dim=dim)


def neo_hookean_stress(state: DeformationState, mu, psi) -> np.ndarray:
    """Effective first Piola-Kirchhoff stress ``J (mu B_e - psi I) F^{-T}``."""
    F_inv, _ = _checked_inverse(state.F, "deformation gradient")
    P = state.J * (mu * state.B_e - psi * np.eye(3)) @ F_inv.T
    return _restrict(P, state.dim)


def neo_hookean_energy(F, F_g, mu, psi) -> float:
    """``J_g [(mu/2)(tr C_e - 3) - psi (J/J_g - 1)]``.

    Its derivative in ``F`` equals :func:`neo_hookean_stress` wherever
    ``J_e = 1``.
    """
    s = elastic_decomposition(F, F_g)
    return s.J_g * (0.5 * mu * (np.trace(s.F_e.T @ s.F_e) - 3.0) - psi * (s.J / s.J_g - 1.0))


def fluid_stress(F, p, alpha_BW) -> np.ndarray:
    """``-alpha_BW J p F^{-T}``."""
    F3, dim = _embed(F)
    F_inv, J = _checked_inverse(F3, "deformation gradient")
    if not J > 0:
        raise ParameterError(f"det F must be positive, got {J}")
    return _restrict(-alpha_BW * J * p * F_inv.T, dim)


def darcy_pullback(F, kappa_over_eta, grad_p, phi_f=1.0) -> np.ndarray:
    """Relative fluid velocity ``-F (kappa/(eta phi_f)) C^{-1} Grad p``."""
    if not phi_f > 0:
        raise ParameterError(f"fluid fraction must be positive, got {phi_f}")
    F = np.asarray(F, dtype=float)
    F_inv, J = _checked_inverse(F, "deformation gradient")
    if not J > 0:
        raise ParameterError(f"det F must be positive, got {J}")
    C_inv = F_inv @ F_inv.T
    return -(kappa_over_eta / phi_f) * F @ C_inv @ np.asarray(grad_p, dtype=float)


def mass_source_fluid(g: GrowthFactors, dm_dt, ell0, m) -> float:
    """Fluid mass source ``ell0 (2 delta1 + delta2 + d/dt[delta3 m/(1+m^2)])``."""
    chain = g.delta3 * (1.0 - m * m) / (1.0 + m * m) ** 2 * dm_dt
    return ell0 * (2.0 * g.delta1 + g.delta2 + chain)


@dataclass(frozen=True)
class PhaseFractions:
    phi_s: float
    phi_f: float = field(default=None)

    def __post_init__(self):
        if self.phi_f is None:
            object.__setattr__(self, "phi_f", 1.0 - self.phi_s)
        if not (0 <= self.phi_s <= 1 and 0 <= self.phi_f <= 1):
            raise ParameterError(f"volume fractions must lie in [0, 1], got ({self.phi_s}, {self.phi_f})")
        if abs(self.phi_s + self.phi_f - 1.0) > 1e-12:
            raise ParameterError("volume fractions must sum to one")


def solid_mass_growth_rate(phi: PhaseFractions, m, m0, alpha0) -> float:
    """Logistic proliferation ``alpha0 phi_s (1 - phi_s) (m - m0)``."""
    return alpha0 * phi.phi_s * (1.0 - phi.phi_s) * (m - m0)


def growth_rate_constraint_residual(gamma, gamma_dot, r_s, phi_s) -> float:
    """``sum(gamma_dot / gamma) - r_s / phi_s``."""
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma <= 0):
        raise ParameterError("growth factors must be positive in the rate constraint")
    if not phi_s > 0:
        raise ParameterError(f"solid fraction must be positive, got {phi_s}")
    return float(np.sum(np.asarray(gamma_dot, dtype=float) / gamma) - r_s / phi_s)


def chemotaxis_pullback_tensor(F, D_scalar) -> np.ndarray:
    """Referential diffusion tensor ``J D C^{-1}``."""
    F = np.asarray(F, dtype=float)
    F_inv, J = _checked_inverse(F, "deformation gradient")
    if not J > 0:
        raise ParameterError(f"det F must be positive, got {J}")
    C_inv = F_inv @ F_inv.T
    return J * D_scalar * 0.5 * (C_inv + C_inv.T)


def psi_for_incompressibility(F, F_g, mu, atol=1e-10) -> float:
    """Multiplier that leaves a stress-free state with ``B_e = I``.

    Only this reference match is provided; a general ``psi`` is a field
    unknown of the finite-strain problem.
    """
    s = elastic_decomposition(F, F_g)
    if not np.allclose(s.B_e, np.eye(3), atol=atol, rtol=0):
        raise ParameterError("psi is only determined here for B_e = I")
    return float(mu)


def dilation_measure(F) -> float:
    """``tr C - d``, the finite-strain replacement of ``div u``."""
    F = np.asarray(F, dtype=float)
    return float(np.trace(F.T @ F) - F.shape[0])
