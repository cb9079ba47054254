import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from primordia.model import ParameterSet

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def random_params(rng, **fixed):
    """A ParameterSet with every rate and modulus drawn over a wide range."""
    u = lambda lo, hi: float(rng.uniform(lo, hi))  # noqa: E731
    lu = lambda lo, hi: float(np.exp(rng.uniform(np.log(lo), np.log(hi))))  # noqa: E731
    values = dict(
        m0=u(0.1, 5.0), D_m=lu(1e-3, 1.0), D_f=lu(1e-2, 1.0), alpha=u(0.0, 12.0),
        kappa1=lu(1e-3, 0.5), kappa2=lu(1e-3, 0.5), kappa3=lu(0.1, 2.0), kappa4=lu(0.1, 2.0),
        K1=u(0.5, 3.0), K2=u(0.5, 3.0), K3=u(1.0, 8.0), P1=u(1.0, 3.0), P2=u(1.0, 3.0), P3=u(1.0, 3.0),
        delta_F=u(0.2, 2.0), delta_B=u(0.2, 2.0), E=lu(1e2, 1e5), nu=u(0.05, 0.45),
        C0=lu(1e-4, 1e-1), kappa=lu(1e-5, 1e-2), alpha_BW=u(0.0, 1.0), tau=u(0.0, 100.0),
        eta=lu(0.05, 1.0), xi_f=u(0.0, 0.5), rho=lu(0.1, 10.0), zeta=u(0.2, 2.0),
    )
    values.update(fixed)
    return ParameterSet(**values)


@st.composite
def param_sets(draw, **fixed):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_params(np.random.default_rng(seed), **fixed)


@pytest.fixture
def table1():
    return ParameterSet()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line for an acceptance criterion."""
    def emit(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
