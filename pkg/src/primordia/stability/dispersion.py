"""Dispersion relation: growth factors of plane waves versus ``k^2``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from ..model import ParameterSet, SteadyState
from ..roots import poly_roots
from .system import char_poly, inertial_factor

__all__ = ["DispersionPoint", "dispersion", "select_argmax_root"]

_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class DispersionPoint:
    k2: float
    roots: np.ndarray
    max_re: float
    argmax_root: complex


def select_argmax_root(roots) -> complex:
    """Root with the largest real part.

    Real parts within a relative ``1e-12`` of the maximum count as ties
    (conjugate pairs rarely agree to the last bit); ties go to the largest
    imaginary part, then to the lexicographically smallest ``(re, im)``.
    """
    z = np.asarray(roots, dtype=complex)
    top = z.real.max()
    tol = _TIE_RTOL * max(1.0, float(np.abs(z).max()))
    tied = z[z.real >= top - tol]
    best_im = tied.imag.max()
    tied = tied[tied.imag == best_im]
    order = np.lexsort((tied.imag, tied.real))
    return complex(tied[order[0]])


def dispersion(p: ParameterSet, s: SteadyState, k2_grid, include_inertial_factor: bool = False,
               d: int = 2, method: str = "companion"):
    """Roots of the characteristic polynomial on a grid of squared wave numbers.

    The inertial factor ``(rho phi^2 + mu k^2)^(d-1)`` only contributes
    purely imaginary roots and is left out unless requested.
    """
    K = np.asarray(k2_grid, dtype=float).ravel()
    if K.size == 0:
        raise ParameterError("k2 grid is empty")
    if np.any(K < 0) or np.any(np.diff(K) < 0):
        raise ParameterError("k2 grid must be nonnegative and ascending")
    out = []
    for k2 in K:
        roots = poly_roots(char_poly(p, s, k2).full, method=method)
        if include_inertial_factor:
            # roots of rho phi^2 + mu k^2 in closed form; multiplying the
            # factor in would spread the coefficients over ~15 decades
            inert = np.roots(inertial_factor(p, k2)[::-1]).astype(complex)
            roots = np.concatenate([roots] + [inert] * (d - 1))
            roots = roots[np.lexsort((roots.imag, roots.real))]
        best = select_argmax_root(roots)
        out.append(DispersionPoint(float(k2), roots, float(best.real), best))
    return out
