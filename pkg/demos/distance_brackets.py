"""Certified brackets and heuristic estimates for the state-space metric.

The metric d between states phi, psi is the sup of |phi(a) - psi(a)| over
elements with Dirac-commutator norm <= 1.  It is never computed exactly;
instead it is enclosed by d_inf <= d <= d_2 (both computable on a ball with
rigorous tails), and a ratio-ascent heuristic produces a point estimate
inside the bracket.
"""

import numpy as np

from qmetric import (AlgebraElement, CharacterState, DensityState,
                     GroupElement, TraceState, connes_bracket,
                     connes_heuristic, d_2, d_inf, enumerate_ball)
from qmetric.groups import FreeAbelian

z = FreeAbelian(1)
ball = enumerate_ball(z, 100)

trace = TraceState(z)
char = CharacterState(z, [1.0])
rho = DensityState(z, AlgebraElement({GroupElement((0,)): 1.0,
                                      GroupElement((1,)): 1.0}))

print("trace vs the unit character on Z (limit of the bracket: pi/sqrt(3))")
lower = d_inf(trace, char, ball)
upper = d_2(trace, char, ball)
print(f"  d_inf = [{lower.lo:.6f}, {lower.hi:.6f}]")
print(f"  d_2   = [{upper.lo:.6f}, {upper.hi:.6f}]")
print(f"  pi/sqrt(3) = {np.pi / np.sqrt(3):.6f}")

print("\nheuristic point estimates (support radius 3, truncation radius 40)")
for name, phi, psi in [("trace vs char", trace, char),
                       ("trace vs rho", trace, rho),
                       ("char  vs rho", char, rho)]:
    bracket = connes_bracket(phi, psi, ball)
    result = connes_heuristic(phi, psi, z, 3, 40)
    print(f"  {name}: bracket [{bracket.lo:.4f}, {bracket.hi:.4f}], "
          f"estimate {result.estimate:.4f} "
          f"(sigma drift {result.sigma_drift:.2e})")

print("\nweak-* convergence: characters z_n = e^(i/n) approach the constant 1")
limit = CharacterState(z, [1.0])
big_ball = enumerate_ball(z, 2000)
for n in (1, 2, 5, 10, 25, 50):
    state = CharacterState(z, [np.exp(1j / n)])
    lo = d_inf(state, limit, big_ball).lo
    print(f"  n = {n:2d}: d_inf.lo = {lo:.6f}   "
          f"(closed form 2 sin(1/2n) = {2 * np.sin(0.5 / n):.6f})")
