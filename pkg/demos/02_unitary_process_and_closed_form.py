"""The four-angle unitary and the closed form of its outcome-0 probability.

Any single-qubit unitary is parameterized by four angles.  Pushing the
random-coefficient input through it and measuring in the computational
basis gives an outcome-0 probability with a closed form in (phi3, phi4)
and the input's (r, phi) only: the global phase phi1 and the angle phi2
drop out, which is exactly why they cannot be estimated from such
measurements.
"""

import numpy as np

from rcps import (
    UnitaryParams,
    apply_process,
    build_unitary,
    p0_closed_form,
    probabilities,
    qubit_state,
)

params = UnitaryParams(phi1=np.pi / 10, phi2=np.pi / 5,
                       phi3=3 * np.pi / 10, phi4=2 * np.pi / 5)
m = build_unitary(params)
print("Unitary for (phi1, phi2, phi3, phi4) = (pi/10, pi/5, 3pi/10, 2pi/5):")
print(np.round(m, 4))
print("unitarity check |M M^H - I|_max =",
      f"{np.max(np.abs(m @ m.conj().T - np.eye(2))):.2e}")

r, phi = 0.5, 0.2
state_in = qubit_state(r, phi)
state_out = apply_process(m, state_in)
print(f"\ninput  {np.round(state_in, 4)}")
print(f"output {np.round(state_out, 4)}")

p_matrix = probabilities(state_out)[0]
p_closed = p0_closed_form(params.phi3, params.phi4, r, phi)
print(f"\nP0 via matrix route : {p_matrix:.12f}")
print(f"P0 via closed form  : {p_closed:.12f}")

print("\nphi1 and phi2 leave P0 untouched:")
for phi1, phi2 in [(0.0, 0.0), (1.3, -2.1), (-3.0, 0.7)]:
    alt = UnitaryParams(phi1, phi2, params.phi3, params.phi4)
    p_alt = probabilities(apply_process(build_unitary(alt), state_in))[0]
    print(f"  phi1={phi1:+.1f} phi2={phi2:+.1f} -> P0 = {p_alt:.12f}")

print("\nConsequence: only (phi3, phi4) are identifiable from "
      "computational-basis statistics, and that is what the estimator "
      "recovers (see demo 04).")
