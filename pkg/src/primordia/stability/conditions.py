"""Patterning conditions derived from the constant term of the dispersion
relation.

Both the chemotaxis constant term ``a0`` and the coupled constant term
``d0 = a0 c0 + b0`` factor as a power of ``k^2`` times a quadratic in
``k^2``:

    a0 = K (A3 K^2 + A2 K + A1)
    d0 = (kappa/eta) (2mu + lambda) K^3 (A3 K^2 + (A2 + g) K + A1 + g delta_B)

with ``K = k^2`` and ``g = -xi_f sigma_lin chi A_e / (2mu + lambda)``.  The
quadratic factors ("reduced targets") share the sign of the full terms for
``K > 0`` and are what the critical-parameter search drives to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ..errors import NoSignChangeError, ParameterError
from ..model import ParameterSet, SteadyState, steady_state
from ..roots import poly_roots

__all__ = [
    "DEFAULT_K2_MAX",
    "routh_hurwitz_cubic",
    "UncoupledConditions",
    "uncoupled_conditions",
    "ThetaCoeffs",
    "coupled_theta",
    "CoupledConditions",
    "coupled_conditions",
    "reduced_target",
    "critical_wavenumber",
    "critical_parameter",
    "a0_of_k2",
    "d0_of_k2",
]

DEFAULT_K2_MAX = 50.0


def routh_hurwitz_cubic(alpha3, alpha2, alpha1, alpha0):
    """Routh-Hurwitz test for ``alpha3 z^3 + alpha2 z^2 + alpha1 z + alpha0``.

    Returns ``(stable, margin)`` where ``margin`` is the smallest of the
    coefficients and of ``alpha2 alpha1 - alpha3 alpha0``.
    """
    if not alpha3 > 0:
        raise ParameterError(f"leading coefficient must be positive, got {alpha3}")
    tested = (alpha3, alpha2, alpha1, alpha0, alpha2 * alpha1 - alpha3 * alpha0)
    margin = min(tested)
    return margin > 0, margin


def _chemotaxis_factors(p: ParameterSet, s: SteadyState):
    """(A3, A2, A1) with ``a0 = K (A3 K^2 + A2 K + A1)``."""
    Dm, Df, dF, dB = p.D_m, p.D_f, p.delta_F, p.delta_B
    A3 = Dm * Df * s.A_e
    A2 = (Dm * Df * dB + Dm * dF) * s.A_e - s.chi * s.A_m
    A1 = Dm * dB * dF * s.A_e + s.chi * s.H3 * s.A_b - s.chi * s.A_m * dB
    return A3, A2, A1


def _coupling_shift(p: ParameterSet, s: SteadyState):
    return -p.xi_f * s.sigma_act_lin * s.chi * s.A_e / p.p_wave_modulus


def a0_of_k2(p, s, k2):
    A3, A2, A1 = _chemotaxis_factors(p, s)
    K = np.asarray(k2, dtype=float)
    return K * (A3 * K**2 + A2 * K + A1)


def d0_of_k2(p, s, k2):
    A3, A2, A1 = _chemotaxis_factors(p, s)
    g = _coupling_shift(p, s)
    K = np.asarray(k2, dtype=float)
    scale = p.kappa_over_eta * p.p_wave_modulus
    return scale * K**3 * (A3 * K**2 + (A2 + g) * K + A1 + g * p.delta_B)


def reduced_target(p: ParameterSet, s: SteadyState, mode: str = "uncoupled"):
    """Ascending quadratic coefficients ``(q0, q1, q2)`` of the reduced target."""
    A3, A2, A1 = _chemotaxis_factors(p, s)
    if mode == "uncoupled":
        return A1, A2, A3
    if mode == "coupled":
        g = _coupling_shift(p, s)
        return A1 + g * p.delta_B, A2 + g, A3
    raise ValueError(f"mode must be 'uncoupled' or 'coupled', got {mode!r}")


def _quadratic_min(q0, q1, q2, k2_max):
    """Minimum of ``q0 + q1 K + q2 K^2`` over ``[0, k2_max]`` and its location."""
    candidates = [0.0, k2_max]
    if q2 > 0:
        K_star = -q1 / (2.0 * q2)
        if 0.0 < K_star < k2_max:
            candidates.append(K_star)
    values = [q0 + q1 * K + q2 * K * K for K in candidates]
    i = int(np.argmin(values))
    return values[i], candidates[i]


@dataclass(frozen=True)
class UncoupledConditions:
    condUC1: float
    condUC2: float
    condUC3: float
    min_a0: float
    k2_at_min: float
    patterning_uncoupled: bool

    @property
    def flags(self):
        return (self.condUC1 < 0, self.condUC2 < 0, self.condUC3 > 0)


def uncoupled_conditions(p: ParameterSet, s: SteadyState, k2_max: float = DEFAULT_K2_MAX):
    """Left-hand sides of the three uncoupled patterning conditions.

    ``condUC1 < 0`` and ``condUC2 < 0`` are the sign conditions on the
    ``k^4`` and ``k^2`` terms of ``a0``; ``condUC3 > 0`` is the discriminant
    condition on ``a0'``.  The combined flag additionally requires
    ``min a0 < 0`` on ``(0, k2_max]``, located exactly from the critical
    points of the reduced quadratic.
    """
    A3, A2, A1 = _chemotaxis_factors(p, s)
    uc3 = 4.0 * A2**2 - 12.0 * A3 * A1
    qmin, K_at = _quadratic_min(A1, A2, A3, k2_max)
    if K_at == 0.0:
        # infimum approached as K -> 0+, report a tiny representative K
        K_at = min(1e-9, k2_max)
    a0_min = float(a0_of_k2(p, s, K_at))
    flag = bool(((A2 < 0) or (A1 < 0)) and uc3 > 0 and qmin < 0)
    return UncoupledConditions(A2, A1, uc3, a0_min, K_at, flag)


@dataclass(frozen=True)
class ThetaCoeffs:
    """Coefficients of ``d0'(K) = (kappa/eta) (t4 K^4 + t3 K^3 + t2 K^2 + t1 K)``."""

    theta1: float
    theta2: float
    theta3: float
    theta4: float
    scale: float = 1.0

    def d0_prime(self, k2):
        K = np.asarray(k2, dtype=float)
        return self.scale * K * (self.theta1 + K * (self.theta2 + K * (self.theta3 + K * self.theta4)))


def coupled_theta(p: ParameterSet, s: SteadyState) -> ThetaCoeffs:
    """Coefficients of the ``k^2``-derivative of the coupled constant term."""
    A3, A2, A1 = _chemotaxis_factors(p, s)
    pw = p.p_wave_modulus
    coupling = -p.xi_f * s.sigma_act_lin * s.chi * s.A_e
    return ThetaCoeffs(
        theta1=0.0,
        theta2=3.0 * (pw * A1 + coupling * p.delta_B),
        theta3=4.0 * (pw * A2 + coupling),
        theta4=5.0 * pw * A3,
        scale=p.kappa_over_eta,
    )


def _quartic_discriminant(t):
    """Discriminant of ``t4 K^4 + t3 K^3 + t2 K^2 + t1 K``."""
    a, b, c, d = t.theta4, t.theta3, t.theta2, t.theta1
    cubic = b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d
    return d * d * cubic


@dataclass(frozen=True)
class CoupledConditions:
    theta: ThetaCoeffs
    condC1: tuple
    condC2: float
    condC3: float
    condCDisc: float
    min_d0: float
    k2_at_min: float
    patterning_coupled: bool

    @property
    def flags(self):
        return (all(v > 0 for v in self.condC1), self.condC2 > 0, self.condC3 > 0, self.condCDisc > 0)


def coupled_conditions(p: ParameterSet, s: SteadyState, k2_max: float = DEFAULT_K2_MAX):
    """Routh-Hurwitz and discriminant conditions on ``d0'``.

    The reported condition values follow the theta coefficients.  Because
    the lowest-order theta vanishes identically for the coupling that is
    consistent with the system determinant, those conditions are neither
    necessary nor sufficient here; ``patterning_coupled`` is therefore
    decided by the exact minimum of ``d0`` over ``(0, k2_max]``.
    """
    t = coupled_theta(p, s)
    c1 = (t.theta1, t.theta2, t.theta3)
    c2 = t.theta2 * t.theta3 - t.theta1 * t.theta4
    c3 = t.theta1 * t.theta2 * t.theta3 - t.theta1**2 * t.theta4
    disc = _quartic_discriminant(t)
    q0, q1, q2 = reduced_target(p, s, "coupled")
    qmin, K_at = _quadratic_min(q0, q1, q2, k2_max)
    if K_at == 0.0:
        K_at = min(1e-9, k2_max)
    d0_min = float(d0_of_k2(p, s, K_at))
    return CoupledConditions(t, c1, c2, c3, disc, d0_min, K_at, bool(qmin < 0))


def critical_wavenumber(p: ParameterSet, s: SteadyState, mode: str = "uncoupled"):
    """Positive real stationary points of ``a0`` (uncoupled) or ``d0`` (coupled).

    Returns a sorted array, possibly empty.
    """
    if mode == "uncoupled":
        A3, A2, A1 = _chemotaxis_factors(p, s)
        coeffs = np.array([A1, 2.0 * A2, 3.0 * A3])
        deriv = lambda K: A1 + 2 * A2 * K + 3 * A3 * K * K  # noqa: E731
        scale = max(abs(A1), abs(A2), abs(A3))
    elif mode == "coupled":
        t = coupled_theta(p, s)
        coeffs = np.array([t.theta1, t.theta2, t.theta3, t.theta4])
        deriv = lambda K: t.theta1 + K * (t.theta2 + K * (t.theta3 + K * t.theta4))  # noqa: E731
        scale = max(abs(c) for c in coeffs)
    else:
        raise ValueError(f"mode must be 'uncoupled' or 'coupled', got {mode!r}")
    if scale == 0 or not np.any(coeffs[1:] != 0):
        return np.empty(0)
    roots = poly_roots(coeffs)
    found = []
    for z in roots:
        if abs(z.imag) > 1e-9 * max(1.0, abs(z)) or z.real <= 0:
            continue
        K = float(z.real)
        if abs(deriv(K)) <= 1e-8 * scale * max(1.0, K) ** (coeffs.size - 1):
            found.append(K)
    return np.array(sorted(found))


def _reduced_min(p: ParameterSet, mode: str, k2_max: float):
    s = steady_state(p)
    q0, q1, q2 = reduced_target(p, s, mode)
    return _quadratic_min(q0, q1, q2, k2_max)[0]


def critical_parameter(p: ParameterSet, param_name: str, bracket, mode: str = "uncoupled",
                       k2_max: float = DEFAULT_K2_MAX, xtol: float = 1e-13):
    """Parameter value where the minimum of the patterning target crosses zero.

    ``g(theta) = min_{K in (0, k2_max]} q(theta; K)`` with ``q`` the reduced
    target (see module docstring); ``q`` is normalised so that both modes
    are on the scale of the chemotaxis factors.  The steady state is
    recomputed for every trial value.

    Raises
    ------
    NoSignChangeError
        If ``g`` has the same sign at both bracket ends.
    """
    lo, hi = (float(v) for v in bracket)
    if param_name not in p.as_dict():
        raise ParameterError(f"unknown parameter {param_name!r}")

    def g(theta):
        return _reduced_min(p.replace(**{param_name: theta}), mode, k2_max)

    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0:
        return lo
    if g_hi == 0:
        return hi
    if math.copysign(1, g_lo) == math.copysign(1, g_hi):
        raise NoSignChangeError(
            f"no sign change of the {mode} target for {param_name} in [{lo}, {hi}]: "
            f"g(lo)={g_lo:.6g}, g(hi)={g_hi:.6g}", g_lo, g_hi)
    root = brentq(g, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)
    return float(root)
