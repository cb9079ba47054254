"""Polynomial root finding.

Two independent routes are provided: eigenvalues of a balanced companion
matrix (the production path) and the Aberth-Ehrlich simultaneous iteration,
used as a cross-check.  Coefficients are always given in *ascending* order,
``coeffs[i]`` multiplying ``z**i``.
"""

from __future__ import annotations

import numpy as np

from .errors import DegeneratePolynomialError

__all__ = ["poly_roots", "aberth_roots", "companion_roots", "polyval_asc", "root_residual_ok"]

_TRIM_RTOL = 1e-14


def _prepare(coeffs):
    """Trim negligible leading terms and split off exact zero roots.

    Returns ``(core, n_zero, degree)`` where ``core`` is ascending with a
    nonzero constant term.
    """
    c = np.atleast_1d(np.asarray(coeffs))
    if c.ndim != 1:
        raise ValueError("coefficients must be one-dimensional")
    c = c.astype(complex if np.iscomplexobj(c) else float)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0 or not np.isfinite(scale):
        raise DegeneratePolynomialError("all polynomial coefficients vanish")
    nz = np.nonzero(np.abs(c) > _TRIM_RTOL * scale)[0]
    c = c[: nz[-1] + 1]
    degree = c.size - 1
    if degree == 0:
        raise DegeneratePolynomialError("polynomial is a nonzero constant")
    n_zero = int(np.argmax(c != 0))
    return c[n_zero:], n_zero, degree


def _sort_roots(z):
    z = np.asarray(z, dtype=complex)
    order = np.lexsort((z.imag, z.real))
    return z[order]


def _balance(A, max_sweeps=32):
    """Osborne diagonal balancing (in place copy), radix 2."""
    A = A.copy()
    n = A.shape[0]
    for _ in range(max_sweeps):
        converged = True
        for i in range(n):
            c = np.sum(np.abs(A[:, i])) - abs(A[i, i])
            r = np.sum(np.abs(A[i, :])) - abs(A[i, i])
            if c == 0 or r == 0:
                continue
            f = 1.0
            s = c + r
            while c < r / 2.0:
                c *= 2.0
                r /= 2.0
                f *= 2.0
            while c >= r * 2.0:
                c /= 2.0
                r *= 2.0
                f /= 2.0
            if (c + r) < 0.95 * s:
                converged = False
                A[:, i] *= f
                A[i, :] /= f
        if converged:
            break
    return A


def companion_roots(coeffs):
    """Roots as eigenvalues of the balanced companion matrix."""
    core, n_zero, _ = _prepare(coeffs)
    n = core.size - 1
    roots = [np.zeros(n_zero, dtype=complex)]
    if n > 0:
        monic = core[:-1] / core[-1]
        C = np.zeros((n, n), dtype=monic.dtype)
        C[1:, :-1] = np.eye(n - 1)
        C[:, -1] = -monic
        roots.append(np.linalg.eigvals(_balance(C)).astype(complex))
    return _sort_roots(np.concatenate(roots))


def _initial_guesses(c):
    """Bini's starting points: circles whose radii come from the Newton polygon."""
    n = c.size - 1
    logs = np.full(n + 1, -np.inf)
    nz = c != 0
    logs[nz] = np.log(np.abs(c[nz]))
    hull = []
    for i in np.flatnonzero(nz):
        while len(hull) >= 2:
            i0, i1 = hull[-2], hull[-1]
            if (logs[i1] - logs[i0]) * (i - i0) <= (logs[i] - logs[i0]) * (i1 - i0):
                hull.pop()
            else:
                break
        hull.append(int(i))
    z = []
    for i0, i1 in zip(hull[:-1], hull[1:]):
        m = i1 - i0
        radius = np.exp((logs[i0] - logs[i1]) / m)
        angles = 2.0 * np.pi * np.arange(m) / m + 2.0 * np.pi * i0 / n + 0.4
        z.append(radius * np.exp(1j * angles))
    return np.concatenate(z)


def _aberth_core(c, tol=1e-15, max_iter=500):
    n = c.size - 1
    if n == 1:
        return np.array([-c[0] / c[1]], dtype=complex)
    dc = c[1:] * np.arange(1, n + 1)
    z = _initial_guesses(c)
    active = np.ones(n, dtype=bool)
    for _ in range(max_iter):
        pz = np.polynomial.polynomial.polyval(z, c)
        dpz = np.polynomial.polynomial.polyval(z, dc)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            step = ratio / (1.0 - ratio * s)
        step = np.where(np.isfinite(step), step, 0.0)
        step[~active] = 0.0
        z = z - step
        small = np.abs(step) <= tol * np.maximum(np.abs(z), 1e-300)
        active &= ~(small | (pz == 0))
        if not active.any():
            break
    return z


def aberth_roots(coeffs, tol=1e-15, max_iter=500):
    """Roots by Aberth-Ehrlich iteration (independent of any eigensolver)."""
    core, n_zero, _ = _prepare(coeffs)
    parts = [np.zeros(n_zero, dtype=complex)]
    if core.size > 1:
        parts.append(_aberth_core(core.astype(complex), tol=tol, max_iter=max_iter))
    return _sort_roots(np.concatenate(parts))


def poly_roots(coeffs, method: str = "companion"):
    """All roots of a polynomial with ascending coefficients.

    Parameters
    ----------
    coeffs : array_like
        Real or complex coefficients, lowest degree first.  Leading
        coefficients below ``1e-14`` times the largest magnitude are dropped.
    method : {"companion", "aberth"}

    Returns
    -------
    ndarray of complex
        Roots sorted by real part, then imaginary part.  Exact zero roots
        (vanishing low-order coefficients) are returned as exact zeros.

    Raises
    ------
    DegeneratePolynomialError
        If every coefficient vanishes or only a constant remains.
    """
    if method == "companion":
        return companion_roots(coeffs)
    if method == "aberth":
        return aberth_roots(coeffs)
    raise ValueError(f"unknown root-finding method {method!r}")


def polyval_asc(coeffs, z):
    return np.polynomial.polynomial.polyval(np.asarray(z), np.asarray(coeffs))


def root_residual_ok(coeffs, roots, rtol=1e-8):
    """Check ``|P(z)| <= rtol * max|c| * max(1, |z|)**n`` for every root."""
    c = np.asarray(coeffs)
    n = c.size - 1
    scale = np.max(np.abs(c))
    z = np.asarray(roots)
    bound = rtol * scale * np.maximum(1.0, np.abs(z)) ** n
    return bool(np.all(np.abs(polyval_asc(c, z)) <= bound))
