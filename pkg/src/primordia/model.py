"""Model parameters, nonlinear coefficient functions and the homogeneous
steady state of the dimensionless poroelasticity-chemotaxis system.

All quantities are dimensionless; the BMP diffusivity is scaled to one.
Default values are the reference set used for the linear stability
analysis (m0 = 2, alpha = 4, E = 3e4, nu = 0.4, ...).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateRatesError, ParameterError

__all__ = [
    "ParameterSet",
    "SteadyState",
    "hill",
    "hill_prime",
    "priming_wave",
    "lame_from_E_nu",
    "steady_state",
    "PARAMETER_NAMES",
]


def lame_from_E_nu(E, nu):
    """Return the Lamé pair ``(mu, lambda)`` for Young modulus and Poisson ratio."""
    if not E > 0:
        raise ParameterError(f"Young modulus must be positive, got E={E}")
    if not 0 <= nu < 0.5:
        raise ParameterError(f"Poisson ratio must lie in [0, 0.5), got nu={nu}")
    mu = E / (2.0 * (1.0 + nu))
    lam = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu))
    return mu, lam


@dataclass(frozen=True)
class ParameterSet:
    """Dimensionless model constants.

    The Lamé moduli are derived from ``E`` and ``nu`` and exposed as the
    read-only properties :attr:`mu` and :attr:`lam`.  Use :meth:`replace`
    to obtain a modified copy.
    """

    m0: float = 2.0
    D_m: float = 0.01
    D_f: float = 0.1
    alpha: float = 4.0
    kappa1: float = 0.05
    kappa2: float = 0.025
    kappa3: float = 1.0
    kappa4: float = 1.0
    K1: float = 1.0
    K2: float = 2.0
    K3: float = 5.0
    P1: float = 2.0
    P2: float = 2.0
    P3: float = 2.0
    delta_F: float = 1.0
    delta_B: float = 1.0
    omega1: float = 1.0
    omega2: float = 5.0
    omega3: float = 0.04
    E: float = 3.0e4
    nu: float = 0.4
    C0: float = 1.0e-3
    kappa: float = 1.0e-4
    alpha_BW: float = 0.1
    tau: float = 60.0
    eta: float = 0.1
    xi_f: float = 0.15
    rho: float = 1.0
    zeta: float = 1.0
    gamma_exp: float = 1.0

    def __post_init__(self):
        for name in ("m0", "alpha", "tau"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if self.m0 < 0:
            raise ParameterError(f"m0 must be nonnegative, got {self.m0}")
        if self.alpha < 0:
            raise ParameterError(f"alpha must be nonnegative, got {self.alpha}")
        for name in ("D_m", "D_f", "K1", "K2", "K3", "P1", "P2", "P3",
                     "delta_F", "delta_B", "eta", "rho", "E"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(f"{name} must be positive, got {value}")
        if not 0 < self.nu < 0.5:
            raise ParameterError(f"nu must lie in (0, 0.5), got {self.nu}")
        for name in ("C0", "kappa", "alpha_BW", "kappa1", "kappa2", "kappa3",
                     "kappa4", "omega1", "omega2", "omega3", "zeta", "xi_f",
                     "gamma_exp"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ParameterError(f"{name} must be nonnegative, got {value}")

    @property
    def mu(self) -> float:
        return lame_from_E_nu(self.E, self.nu)[0]

    @property
    def lam(self) -> float:
        return lame_from_E_nu(self.E, self.nu)[1]

    @property
    def kappa_over_eta(self) -> float:
        return self.kappa / self.eta

    @property
    def active_modulus(self) -> float:
        """The bulk-like prefactor ``lambda + 2 mu / 3`` of the active stress."""
        return self.lam + 2.0 * self.mu / 3.0

    @property
    def p_wave_modulus(self) -> float:
        """``2 mu + lambda``."""
        return 2.0 * self.mu + self.lam

    def replace(self, **changes) -> "ParameterSet":
        unknown = set(changes) - set(PARAMETER_NAMES)
        if unknown:
            raise ParameterError(f"unknown parameter(s): {sorted(unknown)}")
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


PARAMETER_NAMES = tuple(f.name for f in dataclasses.fields(ParameterSet))


def hill(m, K, P):
    """Hill function ``m**P / (K**P + m**P)``.

    Accepts scalars or arrays for ``m``; raises :class:`ParameterError` for
    negative ``m`` or nonpositive ``K``/``P``.
    """
    m = np.asarray(m, dtype=float)
    if np.any(m < 0):
        raise ParameterError("hill: m must be nonnegative")
    if not K > 0 or not P > 0:
        raise ParameterError(f"hill: K and P must be positive (K={K}, P={P})")
    mp = m**P
    out = mp / (K**P + mp)
    return float(out) if out.ndim == 0 else out


def hill_prime(m, K, P):
    """Derivative of :func:`hill` with respect to ``m``."""
    m = np.asarray(m, dtype=float)
    if np.any(m < 0):
        raise ParameterError("hill_prime: m must be nonnegative")
    if not K > 0 or not P > 0:
        raise ParameterError(f"hill_prime: K and P must be positive (K={K}, P={P})")
    KP = K**P
    with np.errstate(divide="ignore", invalid="ignore"):
        out = P * m ** (P - 1.0) * KP / (KP + m**P) ** 2
    return float(out) if out.ndim == 0 else out


def priming_wave(x2, t, p: ParameterSet):
    """Travelling activation front ``(w1/2) (1 + tanh(w2 (t - x2/w3)))``."""
    if p.omega3 == 0:
        raise ParameterError("priming_wave: omega3 must be nonzero")
    x2 = np.asarray(x2, dtype=float)
    out = 0.5 * p.omega1 * (1.0 + np.tanh(p.omega2 * (t - x2 / p.omega3)))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SteadyState:
    """Homogeneous rest state and the coefficients of the linearised system."""

    m0: float
    e0: float
    f0: float
    b0: float
    k_on: float
    k_off: float
    A_m: float
    A_e: float
    A_b: float
    H3: float
    sigma_act_lin: float
    chi: float = field(default=float("nan"))

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def activation_rates(m, b, w, p: ParameterSet):
    """Epithelium activation ``k_on`` and inactivation ``k_off`` rates."""
    h1 = hill(m, p.K1, p.P1)
    k_on = p.kappa1 * w * h1 + p.kappa2 * hill(m, p.K2, p.P2)
    k_off = (1.0 - h1) * (p.kappa3 + p.kappa4 * b)
    return k_on, k_off


def active_stress_coefficient(m, p: ParameterSet):
    """Scalar active stress ``(lambda + 2mu/3) tau m / (1 + zeta m^2)``."""
    m = np.asarray(m, dtype=float)
    return p.active_modulus * p.tau * m / (1.0 + p.zeta * m * m)


def steady_state(p: ParameterSet, e0: float | None = None) -> SteadyState:
    """Homogeneous steady state with the priming wave at its saturated value.

    Parameters
    ----------
    p : ParameterSet
    e0 : float, optional
        Epithelium state to use when activation and inactivation both vanish
        (``k_on + k_off == 0``), where the rest state is not determined by
        the rates.  Ignored otherwise.

    Raises
    ------
    DegenerateRatesError
        If ``k_on + k_off == 0`` and no ``e0`` is supplied.
    """
    m0 = p.m0
    w = p.omega1
    h1 = hill(m0, p.K1, p.P1)
    h3 = hill(m0, p.K3, p.P3)
    dh1 = hill_prime(m0, p.K1, p.P1)
    dh2 = hill_prime(m0, p.K2, p.P2)
    dh3 = hill_prime(m0, p.K3, p.P3)

    b0 = h3 * m0 / p.delta_B
    k_on, k_off = activation_rates(m0, b0, w, p)
    A_e = k_on + k_off
    if A_e == 0:
        if e0 is None:
            raise DegenerateRatesError("epithelium rates degenerate: k_on + k_off = 0")
        e_rest = float(e0)
        if not 0 <= e_rest <= 1:
            raise ParameterError(f"e0 must lie in [0, 1], got {e0}")
    else:
        e_rest = k_on / A_e

    dk_on = p.kappa1 * w * dh1 + p.kappa2 * dh2
    dk_off_dm = -dh1 * (p.kappa3 + p.kappa4 * b0)
    A_m = dk_on * (1.0 - e_rest) - dk_off_dm * e_rest
    A_b = (1.0 - h1) * p.kappa4 * e_rest
    H3 = h3 + dh3 * m0
    zm2 = p.zeta * m0 * m0
    sigma_lin = p.active_modulus * p.tau * (1.0 - zm2) / (1.0 + zm2) ** 2
    chi = p.alpha * m0 * math.exp(-p.gamma_exp * m0)
    return SteadyState(
        m0=m0, e0=e_rest, f0=e_rest / p.delta_F, b0=b0,
        k_on=k_on, k_off=k_off, A_m=A_m, A_e=A_e, A_b=A_b, H3=H3,
        sigma_act_lin=sigma_lin, chi=chi,
    )
