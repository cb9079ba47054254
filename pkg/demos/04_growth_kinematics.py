"""Finite-growth kinematics in a few lines.

Builds a growth tensor, splits a deformation into growth and elastic
parts and evaluates the elastic stress, then runs the identity checks.
Run: python3 demos/04_growth_kinematics.py
"""

import numpy as np

from primordia import growth as gk
from primordia.growth_checks import run_identity_suite

factors = gk.gamma_evolution(t=1.0, m=1.0, g=gk.GrowthFactors(delta2=0.15, delta3=0.045, dim=2))
print("in-plane growth factors after one time unit:", factors.gammas)

Fg = gk.growth_tensor(gk.GrowthFactors(gamma1=0.2, gamma2=0.1, gamma3=0.3))
shear = np.eye(3)
shear[0, 1] = 0.15
F = shear @ Fg
state = gk.elastic_decomposition(F, Fg)
print(f"J = {state.J:.6f} = J_e {state.J_e:.6f} x J_g {state.J_g:.6f}")
print("elastic stress (mu = 1, psi = 1):")
print(np.array2string(gk.neo_hookean_stress(state, 1.0, 1.0), precision=5))

for r in run_identity_suite(500, seed=0):
    print(f"  {r.name:<26} {'ok' if r.passed else 'FAILED'}  worst {r.worst:.2e}")
