"""Where in (m0, alpha) does chemotaxis alone produce patterns?

Prints the uncoupled patterning region as a character map: '#' patterns,
'.' stable.  Rows run over alpha, columns over m0.
Run: python3 demos/02_pattern_space.py
"""

import numpy as np

from primordia import ParameterSet
from primordia.stability import AxisSpec, critical_parameter, pattern_space

m0 = AxisSpec("m0", 0.1, 5.0, 70)
alpha = AxisSpec("alpha", 0.0, 12.0, 25)
grid = pattern_space(ParameterSet(), m0, alpha)

for name in ("patterning_uncoupled", "patterning_coupled"):
    flag = grid.flags[name]
    print(f"\n{name}  (m0 from {m0.lo} to {m0.hi} left to right)")
    for j in range(alpha.count - 1, -1, -1):
        row = "".join("#" if v == 1.0 else "." for v in flag[:, j])
        print(f"alpha {alpha.values[j]:5.1f} |{row}|")

# The same boundary, located to machine precision.
print("\nm0 boundaries from root finding")
for a in (0.5, 1.0, 2.0, 4.0):
    p = ParameterSet(alpha=a)
    col = grid.flags["patterning_uncoupled"][:, int(np.argmin(np.abs(alpha.values - a)))]
    inside = m0.values[col == 1.0]
    lo = critical_parameter(p, "m0", (m0.lo, inside[0]))
    hi = critical_parameter(p, "m0", (inside[-1], m0.hi))
    print(f"  alpha = {a:4.1f}: patterns for {lo:.5f} < m0 < {hi:.5f}")
