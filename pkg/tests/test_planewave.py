import numpy as np
import pytest
import scipy.linalg

from primordia.model import steady_state
from primordia.stability import WaveProbe, assemble_system_matrix, dispersion, planewave_residual_oracle

from conftest import random_params


def _probe(rng):
    p = random_params(rng)
    s = steady_state(p)
    k = rng.normal(size=2)
    k *= rng.uniform(0.3, 3.0) / np.linalg.norm(k)
    phi = complex(rng.normal(), rng.normal())
    w0 = rng.normal(size=7) + 1j * rng.normal(size=7)
    return p, s, k, phi, w0 / np.linalg.norm(w0)


def test_fourth_order_convergence(rng):
    for _ in range(20):
        p, s, k, phi, w0 = _probe(rng)
        res = [planewave_residual_oracle(p, s, k, phi, w0, resolution=r) for r in (0.4, 0.2, 0.1, 0.05)]
        ratios = np.array(res[:-1]) / np.array(res[1:])
        assert np.all(ratios >= 12), ratios
        assert res[-1] <= 1e-6


def test_zero_wave_vector(rng):
    p, s, _, phi, w0 = _probe(rng)
    assert planewave_residual_oracle(p, s, [0.0, 0.0], phi, w0) <= 1e-12


def test_eigenvector_at_root(table1):
    s = steady_state(table1)
    k = np.array([0.6, 0.8]) * np.sqrt(0.87)
    (pt,) = dispersion(table1, s, [float(k @ k)])
    phi = pt.argmax_root
    M = assemble_system_matrix(table1, s, WaveProbe.from_vector(k), phi)
    w0 = scipy.linalg.null_space(M, rcond=1e-9)[:, 0]
    assert np.linalg.norm(M @ w0) <= 1e-8 * np.linalg.norm(M)
    assert planewave_residual_oracle(table1, s, k, phi, w0) <= 1e-6


def test_input_checks(table1):
    s = steady_state(table1)
    with pytest.raises(ValueError):
        planewave_residual_oracle(table1, s, [1.0, 0.0, 0.0], 0.1, np.ones(7))
    with pytest.raises(ValueError):
        planewave_residual_oracle(table1, s, [1.0, 0.0], 0.1, np.ones(6))
