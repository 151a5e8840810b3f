"""Sweep the dissonance sensitivity and watch the lower equilibrium exit.

As zeta grows from 10 to 25, both stated-opinion roots stay real, but the
lower equilibrium's customer coordinate slides below the baseline d once
zeta passes the critical value — after that, only the upper equilibrium
remains inside the acceptance triangle.
"""

import numpy as np

from advisorgame import ModelParams, critical_zeta, nash_equilibria

p = ModelParams(d=0.1, x=0.4, w=0.5, n=1, alpha=0.05, beta=0.1,
                gamma=0.2, zeta=10.0, r_d=0.3, r_s=0.2)

zeta_bar = critical_zeta(p).zeta_bar
print(f"critical dissonance zeta_bar = {zeta_bar:.4f}\n")
print(f"{'zeta':>7} {'c_dagger':>10} {'c_dagger-d':>11} {'admissible':>10}")

for zeta in np.linspace(10.0, 25.0, 16):
    eq = nash_equilibria(p.replace(zeta=float(zeta)))
    c_dag = eq.p_dagger.c[0]
    marker = "  <-- crossing" if abs(zeta - zeta_bar) < 0.5 else ""
    print(f"{zeta:7.2f} {c_dag:10.5f} {c_dag - p.d:+11.5f} "
          f"{str(eq.dagger_admissible):>10}{marker}")

print("\nBelow zeta = 5 the discriminant goes negative and both "
      "equilibria disappear:")
eq = nash_equilibria(p.replace(zeta=5.0))
print(f"zeta = 5: discriminant = {eq.roots.discriminant:.3f}, "
      f"equilibria present = {eq.roots.real}")
