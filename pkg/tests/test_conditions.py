import numpy as np
import pytest
from hypothesis import assume, given

from primordia.errors import NoSignChangeError, ParameterError
from primordia.model import ParameterSet, steady_state
from primordia.stability import (ThetaCoeffs, a0_of_k2, conditions, coupled_conditions,
                                 coupled_theta, critical_parameter, critical_wavenumber,
                                 d0_of_k2, uncoupled_conditions)
from primordia.stability.system import char_poly

from conftest import param_sets, random_params

SCAN = np.concatenate([np.geomspace(1e-6, 1e-2, 2000), np.linspace(1e-2, 50.0, 20000)])


class TestUncoupled:
    def test_no_chemotaxis(self, table1):
        c = uncoupled_conditions(table1.replace(alpha=0.0), steady_state(table1.replace(alpha=0.0)))
        assert c.condUC1 > 0 and c.condUC2 > 0
        assert not c.patterning_uncoupled

    def test_reference_point_patterns(self, table1):
        # (m0, alpha) = (2, 4) lies between the lower and upper m0 boundaries
        lo = critical_parameter(table1, "m0", (0.1, 2.0))
        hi = critical_parameter(table1, "m0", (2.0, 5.0))
        assert lo < 2.0 < hi
        assert uncoupled_conditions(table1, steady_state(table1)).patterning_uncoupled

    def test_a0_matches_char_poly(self, table1):
        s = steady_state(table1)
        for k2 in (0.1, 1.0, 7.0):
            assert a0_of_k2(table1, s, k2) == pytest.approx(char_poly(table1, s, k2).a[0], rel=1e-13)

    @given(param_sets())
    def test_min_sign_against_scan(self, p):
        s = steady_state(p)
        c = uncoupled_conditions(p, s)
        scan = a0_of_k2(p, s, SCAN) / SCAN
        assume(abs(scan.min()) > 1e-6 * np.max(np.abs(scan)))
        assert (scan.min() < 0) == (c.min_a0 < 0)
        if c.patterning_uncoupled:
            assert scan.min() < 0


class TestTheta:
    def test_reduces_without_feedback(self, table1):
        p = table1.replace(xi_f=0.0)
        s = steady_state(p)
        t = coupled_theta(p, s)
        A3, A2, A1 = conditions._chemotaxis_factors(p, s)
        pw = p.p_wave_modulus
        assert t.theta1 == 0.0
        assert t.theta2 == pytest.approx(3 * pw * A1, rel=1e-14)
        assert t.theta3 == pytest.approx(4 * pw * A2, rel=1e-14)

    @given(param_sets())
    def test_leading_positive(self, p):
        assert coupled_theta(p, steady_state(p)).theta4 > 0

    @given(param_sets())
    def test_derivative_finite_difference(self, p):
        s = steady_state(p)
        t = coupled_theta(p, s)
        for K in (0.3, 2.0, 11.0):
            h = 1e-5 * K
            fd = (d0_of_k2(p, s, K + h) - d0_of_k2(p, s, K - h)) / (2 * h)
            scale = max(abs(fd), abs(d0_of_k2(p, s, K)) / K, 1e-300)
            assert abs(t.d0_prime(K) - fd) <= 1e-6 * scale

    @given(param_sets())
    def test_d0_is_full_constant_term(self, p):
        s = steady_state(p)
        for K in (0.5, 4.0):
            full0 = char_poly(p, s, K).full[0]
            assert d0_of_k2(p, s, K) == pytest.approx(full0, rel=1e-9, abs=1e-12 * abs(full0))


class TestCoupled:
    def test_no_active_stress_reduces_to_uncoupled(self, rng):
        for _ in range(50):
            p = random_params(rng, tau=0.0)
            s = steady_state(p)
            cp = char_poly(p, s, 1.7)
            assert np.all(cp.b == 0)
            assert (coupled_conditions(p, s).patterning_coupled
                    == uncoupled_conditions(p, s).patterning_uncoupled)

    def test_no_feedback_reduces_to_uncoupled(self, rng):
        for _ in range(50):
            p = random_params(rng, xi_f=0.0)
            s = steady_state(p)
            assert (coupled_conditions(p, s).patterning_coupled
                    == uncoupled_conditions(p, s).patterning_uncoupled)

    def test_flag_against_scan(self, rng):
        checked = 0
        for _ in range(100):
            p = random_params(rng)
            s = steady_state(p)
            c = coupled_conditions(p, s)
            scan = d0_of_k2(p, s, SCAN) / SCAN**3
            if abs(scan.min()) <= 1e-6 * np.max(np.abs(scan)):
                continue
            checked += 1
            assert c.patterning_coupled == (scan.min() < 0)
        assert checked >= 90

    def test_condition_values(self, table1):
        s = steady_state(table1)
        c = coupled_conditions(table1, s)
        t = c.theta
        assert c.condC1 == (t.theta1, t.theta2, t.theta3)
        assert c.condC2 == t.theta2 * t.theta3 - t.theta1 * t.theta4
        assert c.condC3 == t.theta1 * t.theta2 * t.theta3 - t.theta1**2 * t.theta4
        assert len(c.flags) == 4

    def test_quartic_discriminant_against_roots(self, rng):
        for _ in range(20):
            r = rng.uniform(-3, 3, 3)
            a = rng.uniform(0.5, 2)
            # t4 K^4 + t3 K^3 + t2 K^2 + t1 K = a K (K - r0)(K - r1)(K - r2)
            cub = np.polynomial.polynomial.polyfromroots(r) * a
            t = ThetaCoeffs(theta1=cub[0], theta2=cub[1], theta3=cub[2], theta4=cub[3])
            roots = np.concatenate([[0.0], r])
            disc = a**6 * np.prod([(roots[i] - roots[j]) ** 2 for i in range(4) for j in range(i)])
            assert conditions._quartic_discriminant(t) == pytest.approx(disc, rel=1e-8)


class TestCriticalWavenumber:
    def test_trivial_theta(self, table1, monkeypatch):
        monkeypatch.setattr(conditions, "coupled_theta", lambda p, s: ThetaCoeffs(0.0, 0.0, 0.0, 1.0))
        assert critical_wavenumber(table1, steady_state(table1), "coupled").size == 0

    def test_at_critical_sensitivity(self, table1):
        # the alpha boundary at m0 = 2 is an interior tangency of the target
        ac = critical_parameter(table1, "alpha", (0.01, 12.0))
        p = table1.replace(alpha=ac)
        s = steady_state(p)
        kc = critical_wavenumber(p, s, "uncoupled")
        assert kc.size >= 1
        A3, A2, A1 = conditions._chemotaxis_factors(p, s)
        scale = max(abs(A1), abs(A2) * kc.max(), A3 * kc.max() ** 2) * kc.max()
        assert min(abs(a0_of_k2(p, s, k)) for k in kc) <= 1e-6 * scale

    def test_coupling_shifts_critical_wavenumber(self):
        p = ParameterSet(m0=0.75)
        s = steady_state(p)
        unc = critical_wavenumber(p, s, "uncoupled")
        cpl = critical_wavenumber(p, s, "coupled")
        assert unc.size and cpl.size
        assert not np.allclose(unc.max(), cpl.max(), rtol=1e-6)

    def test_roots_are_stationary(self, rng):
        for _ in range(30):
            p = random_params(rng)
            s = steady_state(p)
            t = coupled_theta(p, s)
            for K in critical_wavenumber(p, s, "coupled"):
                assert K > 0
                scale = max(abs(t.theta2), abs(t.theta3) * K, t.theta4 * K * K) * K * K
                assert abs(t.d0_prime(K) / p.kappa_over_eta) <= 1e-8 * scale

    def test_bad_mode(self, table1):
        with pytest.raises(ValueError):
            critical_wavenumber(table1, steady_state(table1), "both")


class TestCriticalParameter:
    def test_flag_flip(self, table1):
        m0c = critical_parameter(table1, "m0", (0.1, 2.0))
        below = table1.replace(m0=m0c * (1 - 1e-6))
        above = table1.replace(m0=m0c * (1 + 1e-6))
        assert not uncoupled_conditions(below, steady_state(below)).patterning_uncoupled
        assert uncoupled_conditions(above, steady_state(above)).patterning_uncoupled

    def test_widened_bracket(self, table1):
        a = critical_parameter(table1, "m0", (0.1, 2.0))
        b = critical_parameter(table1, "m0", (0.01, 3.0))
        assert a == pytest.approx(b, abs=1e-6)

    def test_target_vanishes(self, table1):
        ac = critical_parameter(table1, "alpha", (0.01, 12.0))
        p = table1.replace(alpha=ac)
        assert abs(conditions._reduced_min(p, "uncoupled", 50.0)) <= 1e-8

    def test_no_sign_change(self, table1):
        with pytest.raises(NoSignChangeError) as info:
            critical_parameter(table1, "alpha", (5.0, 12.0))
        assert info.value.g_lo < 0 and info.value.g_hi < 0

    def test_unknown_parameter(self, table1):
        with pytest.raises(ParameterError):
            critical_parameter(table1, "beta", (0.0, 1.0))

    def test_coupling_lowers_threshold_below_unit_density(self):
        # for m0 < 1 the linearised active stress is positive and the
        # mechanical feedback destabilises
        p = ParameterSet(m0=0.75)
        unc = critical_parameter(p, "alpha", (0.01, 12.0), mode="uncoupled")
        cpl = critical_parameter(p, "alpha", (0.001, 12.0), mode="coupled")
        assert cpl < unc - 1e-6

    def test_coupling_raises_threshold_above_unit_density(self, table1):
        unc = critical_parameter(table1, "alpha", (0.01, 12.0), mode="uncoupled")
        assert unc == pytest.approx(0.3104947787956869, rel=1e-9)
        # above unit density the feedback is stabilising: no coupled threshold
        # exists anywhere on a wide sensitivity range
        with pytest.raises(NoSignChangeError) as info:
            critical_parameter(table1, "alpha", (0.01, 200.0), mode="coupled")
        assert info.value.g_lo > 0 and info.value.g_hi > 0
