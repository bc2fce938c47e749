"""A qubit state with random coefficients and its random probabilities.

Each draw of (r, phi) fixes one ordinary pure state
[r, sqrt(1-r^2) e^{i phi}], so the outcome probabilities of a
computational-basis measurement are itself random across draws.  This
script samples such states, looks at the distribution of the outcome-0
probability P0 = r^2, and contrasts the per-realization density matrix
(rank one, all information about that realization) with the ensemble
mean density matrix (second-order statistics only).
"""

import numpy as np

from rcps import (
    QubitInputDistribution,
    derive_rng,
    mean_density,
    probabilities,
    qubit_state,
    realization_density,
    sample_input_realization,
    sample_input_realizations,
)

dist = QubitInputDistribution(r_min=0.0, r_max=1.0, phi_bound=np.pi / 4)
rng = derive_rng(2024)

print("Three individual realizations:")
for _ in range(3):
    r, phi, state = sample_input_realization(dist, rng)
    p = probabilities(state)
    print(f"  r={r:.4f} phi={phi:+.4f} -> state {np.round(state, 4)}"
          f"   P(0)={p[0]:.4f} P(1)={p[1]:.4f}")

print("\nThe outcome-0 probability is a random variable. Over 10^5 draws:")
r, phi = sample_input_realizations(dist, 10 ** 5, rng)
p0 = r ** 2
print(f"  mean   E{{P0}}   = {p0.mean():.5f}   (analytic 1/3 = {1 / 3:.5f})")
print(f"  power  E{{P0^2}} = {(p0 ** 2).mean():.5f}   (analytic 1/5 = 0.20000)")
print(f"  spread std(P0)  = {p0.std():.5f}   -- invisible to any mean value")

print("\nOne realization's density matrix (a rank-one projector):")
state = qubit_state(0.6, 0.3)
print(np.round(realization_density(state), 4))

print("\nMean density matrix over 10^4 fresh draws "
      "(only keeps E{c_k conj(c_l)}):")
states = [qubit_state(rv, pv)
          for rv, pv in zip(*sample_input_realizations(dist, 10 ** 4, rng))]
rho = mean_density(states)
print(np.round(rho, 4))
print(f"diagonal -> (E{{P0}}, E{{P1}}) = "
      f"({rho[0, 0].real:.4f}, {rho[1, 1].real:.4f}); everything beyond the "
      "first moment of P0 is averaged away here.")
