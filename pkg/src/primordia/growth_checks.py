"""Randomised identity suite for the growth-kinematics algebra."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from . import growth as gk

__all__ = ["CheckResult", "random_deformation", "run_identity_suite"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float


def random_deformation(rng, dim=3, max_cond=1e3):
    """``R U`` with ``U`` SPD and condition number at most ``max_cond``."""
    while True:
        Q = Rotation.random(random_state=rng).as_matrix()[:dim, :dim] if dim == 3 else _rot2(rng)
        stretches = np.exp(rng.uniform(-1.0, 1.0, dim))
        U = Q @ np.diag(stretches) @ Q.T
        R = Rotation.random(random_state=rng).as_matrix() if dim == 3 else _rot2(rng)
        F = R @ U
        if np.linalg.cond(F) <= max_cond:
            return F


def _rot2(rng):
    a = rng.uniform(0, 2 * np.pi)
    return np.array([[np.cos(a), -np.sin(a)], [np.sin(a), np.cos(a)]])


def _random_growth(rng):
    frame = Rotation.random(random_state=rng).as_matrix()
    g = rng.uniform(0.0, 2.0, 3)
    return gk.GrowthFactors(*g, tuple(frame[0]), tuple(frame[1]), tuple(frame[2]))


def run_identity_suite(n_samples: int = 1000, seed: int = 0):
    """Evaluate every kinematic identity on ``n_samples`` random states."""
    rng = np.random.default_rng(seed)
    worst = {k: 0.0 for k in ("J = Je Jg", "F = Fe Fg", "det Fg frame invariance",
                              "pullback SPD", "Pe energy consistency", "trC - d linearisation")}
    tol = {"J = Je Jg": 1e-10, "F = Fe Fg": 1e-12, "det Fg frame invariance": 1e-12,
           "pullback SPD": 0.0, "Pe energy consistency": 1e-6, "trC - d linearisation": 1e-7}
    spd_ok = True
    for _ in range(n_samples):
        F = random_deformation(rng)
        g = _random_growth(rng)
        Fg = gk.growth_tensor(g)
        s = gk.elastic_decomposition(F, Fg)
        worst["J = Je Jg"] = max(worst["J = Je Jg"], abs(s.J - s.J_e * s.J_g) / abs(s.J))
        worst["F = Fe Fg"] = max(worst["F = Fe Fg"], np.max(np.abs(s.F_e @ s.F_g - F)) / np.max(np.abs(F)))

        axis = gk.GrowthFactors(g.gamma1, g.gamma2, g.gamma3)
        closed = (1 + np.sqrt(g.gamma1)) * (1 + np.sqrt(g.gamma2)) * (1 + g.gamma3)
        for Fgv in (Fg, gk.growth_tensor(axis)):
            worst["det Fg frame invariance"] = max(worst["det Fg frame invariance"],
                                                   abs(np.linalg.det(Fgv) - closed) / closed)

        D = rng.uniform(0.01, 1.0)
        eig = np.linalg.eigvalsh(gk.chemotaxis_pullback_tensor(F, D))
        spd_ok &= bool(eig.min() > 0)

        # isochoric elastic part so that J_e = 1 at the evaluation point
        Fe = random_deformation(rng)
        Fe = Fe / np.cbrt(np.linalg.det(Fe))
        Fiso = Fe @ Fg
        mu = rng.uniform(0.5, 5.0)
        psi = rng.uniform(0.0, 5.0)
        P = gk.neo_hookean_stress(gk.elastic_decomposition(Fiso, Fg), mu, psi)
        h = 1e-6
        num = np.zeros((3, 3))
        for i in range(3):
            for j in range(3):
                E = np.zeros((3, 3))
                E[i, j] = h
                num[i, j] = (gk.neo_hookean_energy(Fiso + E, Fg, mu, psi)
                             - gk.neo_hookean_energy(Fiso - E, Fg, mu, psi)) / (2 * h)
        worst["Pe energy consistency"] = max(worst["Pe energy consistency"],
                                             np.max(np.abs(num - P)) / max(1.0, np.max(np.abs(P))))

        G = rng.normal(size=(3, 3))
        G *= 1e-4 / np.linalg.norm(G)
        lin = 2.0 * np.trace(G)
        worst["trC - d linearisation"] = max(worst["trC - d linearisation"],
                                             abs(gk.dilation_measure(np.eye(3) + G) - lin))
    worst["pullback SPD"] = 0.0 if spd_ok else 1.0
    return [CheckResult(k, bool(worst[k] <= tol[k]) if k != "pullback SPD" else spd_ok,
                        float(worst[k]), tol[k]) for k in worst]
