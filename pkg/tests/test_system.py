import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from primordia.errors import ParameterError
from primordia.model import ParameterSet, steady_state
from primordia.stability import (CharPoly, WaveProbe, assemble_system_matrix, char_poly,
                                 inertial_factor, routh_hurwitz_cubic)

from conftest import param_sets, random_params


def _det_ratio(p, s, k_vec, phi):
    w = WaveProbe.from_vector(k_vec)
    M = assemble_system_matrix(p, s, w, phi)
    B = p.rho * phi**2 + p.mu * w.k2
    return np.linalg.det(M) / B ** (w.d - 1)


class TestWaveProbe:
    @given(st.lists(st.floats(-20, 20), min_size=2, max_size=3))
    def test_k2(self, k):
        w = WaveProbe.from_vector(k)
        assert abs(w.k2 - sum(x * x for x in k)) <= 1e-14 * max(1.0, w.k2)
        assert w.d == len(k)

    def test_bad_dimension(self):
        with pytest.raises(ParameterError):
            WaveProbe.from_vector([1.0])


class TestSystemMatrix:
    def test_reaction_jacobian_at_zero_wave(self, table1):
        s = steady_state(table1)
        M = assemble_system_matrix(table1, s, WaveProbe.from_vector([0, 0]), 0.0)
        M22 = M[3:, 3:]
        expected = np.array([
            [0, 0, 0, 0],
            [-s.A_m, s.A_e, 0, s.A_b],
            [0, -1, table1.delta_F, 0],
            [-s.H3, 0, 0, table1.delta_B],
        ])
        np.testing.assert_array_equal(M22, expected)

    def test_no_active_stress_column_without_tau(self, table1):
        p = table1.replace(tau=0.0)
        M = assemble_system_matrix(p, steady_state(p), WaveProbe.from_vector([0.3, -1.2]), 0.4 + 0.1j)
        assert np.all(M[:2, 3] == 0)

    @pytest.mark.parametrize("d", [2, 3])
    def test_determinant_master_invariant(self, rng, d):
        worst = 0.0
        for _ in range(100):
            p = random_params(rng)
            s = steady_state(p)
            k = rng.normal(size=d) * rng.uniform(0.05, 3.0)
            phi = complex(rng.normal(), rng.normal())
            full = char_poly(p, s, float(k @ k))(phi)
            det = _det_ratio(p, s, k, phi)
            worst = max(worst, abs(det - full) / abs(det))
        assert worst <= 1e-8

    def test_determinant_independent_of_direction(self, table1, rng):
        s = steady_state(table1)
        phi = 0.3 - 0.2j
        k = np.array([1.1, 0.0])
        base = _det_ratio(table1, s, k, phi)
        for angle in rng.uniform(0, 2 * np.pi, 5):
            rot = 1.1 * np.array([np.cos(angle), np.sin(angle)])
            assert _det_ratio(table1, s, rot, phi) == pytest.approx(base, rel=1e-10)


class TestCharPoly:
    @given(param_sets(), st.floats(0.0, 50.0))
    def test_structure(self, p, k2):
        cp = char_poly(p, steady_state(p), k2)
        assert isinstance(cp, CharPoly)
        assert cp.a.size == 5 and cp.b.size == 4 and cp.c.size == 4 and cp.full.size == 8
        assert cp.a[4] == 1.0
        assert cp.c[3] == p.rho * p.C0
        assert cp.bhat[3] == p.C0
        conv = np.convolve(cp.a, cp.c)
        conv[:4] += cp.b
        np.testing.assert_array_equal(cp.full, conv)

    def test_no_chemotaxis_no_coupling(self, table1):
        cp = char_poly(table1.replace(alpha=0.0), steady_state(table1.replace(alpha=0.0)), 2.5)
        assert np.all(cp.b == 0)

    def test_zero_wave_number_root(self, table1):
        assert char_poly(table1, steady_state(table1), 0.0).full[0] == 0.0

    def test_interpolation_oracle(self, table1):
        """Degree-7 fit of det(M)/B at eight nodes reproduces the coefficients."""
        s = steady_state(table1)
        k = np.array([1.0, 0.0])
        nodes = 2.0 * np.exp(2j * np.pi * np.arange(8) / 8)
        vals = np.array([_det_ratio(table1, s, k, z) for z in nodes])
        V = np.vander(nodes, 8, increasing=True)
        fitted = np.linalg.solve(V, vals)
        full = char_poly(table1, s, 1.0).full
        scale = np.max(np.abs(full * 2.0 ** np.arange(8)))
        err = np.abs((fitted - full) * 2.0 ** np.arange(8))
        assert np.max(err) <= 1e-10 * scale
        assert np.max(np.abs(fitted.imag)) <= 1e-10 * scale

    def test_negative_k2(self, table1):
        with pytest.raises(ParameterError):
            char_poly(table1, steady_state(table1), -1.0)

    def test_inertial_factor(self, table1):
        np.testing.assert_array_equal(inertial_factor(table1, 2.0), [2.0 * table1.mu, 0.0, table1.rho])

    @given(st.floats(0.1, 4.0), st.floats(0.2, 3.0), st.sampled_from([-1.0, 1.0]), st.floats(0.01, 1.0))
    def test_zero_activation_sign_rule(self, m0, zeta, tau_sign, xi_f):
        p = ParameterSet(m0=m0, zeta=zeta, tau=60.0 * tau_sign, xi_f=xi_f,
                         kappa1=0.0, kappa2=0.0, kappa3=0.0, kappa4=0.0)
        s = steady_state(p, e0=0.5)
        assert s.A_m == 0 and s.A_b == 0
        crit = 1.0 / np.sqrt(zeta)
        if abs(m0 - crit) < 1e-9:
            return
        cp = char_poly(p, s, 1.3)
        negative = (tau_sign > 0 and m0 < crit) or (tau_sign < 0 and m0 > crit)
        assert (cp.coupling_const < 0) == negative
        # bhat is nonnegative, so the whole P1 block takes the sign of the constant
        assert bool(np.all(cp.b <= 0) and np.any(cp.b < 0)) == negative


class TestRouthHurwitz:
    def test_violation(self):
        stable, margin = routh_hurwitz_cubic(1, 1, 1, 2)
        assert not stable and margin == -1

    def test_factored(self):
        stable, margin = routh_hurwitz_cubic(1, 6, 11, 6)
        assert stable and margin > 0
        np.testing.assert_allclose(np.sort(np.roots([1, 6, 11, 6]).real), [-3, -2, -1])

    def test_homogeneous_cubic(self, table1):
        s = steady_state(table1)
        dB, dF = table1.delta_B, table1.delta_F
        stable, margin = routh_hurwitz_cubic(1.0, dB + dF + s.A_e, (dB + dF) * s.A_e + dB * dF, dB * dF * s.A_e)
        assert stable and margin > 0

    def test_leading_coefficient(self):
        with pytest.raises(ParameterError):
            routh_hurwitz_cubic(0.0, 1, 1, 1)

    @given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
    def test_agrees_with_roots(self, c):
        a2, a1, a0 = c
        stable, margin = routh_hurwitz_cubic(1.0, a2, a1, a0)
        if abs(margin) < 1e-6:
            return
        roots = np.roots([1.0, a2, a1, a0])
        assert stable == bool(np.all(roots.real < 0))
