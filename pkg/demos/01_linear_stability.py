"""Linear stability of the homogeneous state.

Walks from the reference parameters to the dispersion relation and the
critical chemotactic sensitivity, with and without mechanical coupling.
Run: python3 demos/01_linear_stability.py
"""

import numpy as np

from primordia import NoSignChangeError, ParameterSet, steady_state
from primordia.stability import critical_parameter, dispersion, uncoupled_conditions

p = ParameterSet()
s = steady_state(p)
print("Reference steady state")
for key, value in s.as_dict().items():
    print(f"  {key:>14} = {value:.6g}")

# Without spatial variation every perturbation decays: the nonzero roots at
# k^2 = 0 all sit in the left half plane.
(pt,) = dispersion(p, s, [0.0])
print("\nroots at k^2 = 0:", np.array2string(pt.roots, precision=4))

# The fastest growing mode as a function of k^2.
k2 = np.geomspace(0.01, 50.0, 12)
print("\n    k^2     max Re phi")
for point in dispersion(p, s, k2):
    print(f"  {point.k2:7.3f}  {point.max_re:+.5f}")

# Every mode decays, yet chemotaxis on its own would pattern here; the
# mechanical coupling stabilises it.  Switching the active stress off
# (tau = 0) releases the instability.
cond = uncoupled_conditions(p, s)
print(f"\nchemotaxis-only instability: {cond.patterning_uncoupled} "
      f"(min a0 = {cond.min_a0:.4g} at k^2 = {cond.k2_at_min:.4g})")
q = p.replace(tau=0.0)
fastest = max(dispersion(q, steady_state(q), k2), key=lambda pt: pt.max_re)
print(f"with tau = 0 the fastest mode is k^2 = {fastest.k2:.3f}, growth rate {fastest.max_re:.4f}")

# Critical sensitivity alpha_c: the smallest alpha that destabilises some
# wavelength.  At high cell density the mechanical coupling stabilises
# instead of destabilising, so the coupled search finds no threshold.
for m0 in (0.75, 2.0):
    q = p.replace(m0=m0)
    unc = critical_parameter(q, "alpha", (0.01, 200.0), mode="uncoupled")
    try:
        cpl = f"{critical_parameter(q, 'alpha', (0.01, 200.0), mode='coupled'):.6f}"
    except NoSignChangeError as exc:
        cpl = f"none (target stays positive: {exc.g_lo:.3g} .. {exc.g_hi:.3g})"
    print(f"m0 = {m0}: alpha_c uncoupled {unc:.6f}, coupled {cpl}")
