"""Segmented two-level measurement data and moment estimation.

K random input states are drawn; each is prepared N times and measured,
and the shots stay grouped (segmented) by state.  Per-segment sample
frequencies estimate the realizations of the random probability P0, and
their mean and mean square estimate E{P0} and E{P0^2}.  Squaring a
noisy frequency is biased upward by E{P0(1-P0)}/N; the optional
correction removes this, which matters at small N.
"""

import numpy as np

from rcps import (
    QubitInputDistribution,
    UnitaryParams,
    derive_rng,
    estimate_moments,
    expected_p0,
    expected_p0_squared,
    generalized_moment,
    input_moments,
    record_to_csv,
    run_multiple_preparation,
)

dist = QubitInputDistribution(0.0, 1.0, np.pi / 4)
truth = UnitaryParams(np.pi / 10, np.pi / 5, 3 * np.pi / 10, 2 * np.pi / 5)
mom = input_moments(dist)
m1_true = expected_p0(truth.phi3, truth.phi4, mom)
m2_true = expected_p0_squared(truth.phi3, truth.phi4, mom)

print(f"analytic: E{{P0}} = {m1_true:.6f}, E{{P0^2}} = {m2_true:.6f}\n")

small = run_multiple_preparation(dist, truth, k_draws=6, n_shots=10,
                                 rng=derive_rng(42), keep_diagnostics=True)
print("A tiny record (K=6, N=10), exported as CSV:")
print(record_to_csv(small))
print("true P0 per segment:", np.round(small.diagnostics.p0, 3))

print("Moment estimates vs (K, N), same seed layout:")
print(f"{'K':>6} {'N':>6} {'m1_hat':>9} {'m2 plain':>9} {'m2 corrected':>12}")
for k_draws, n_shots in [(200, 20), (2000, 20), (2000, 200), (20000, 200)]:
    rec = run_multiple_preparation(dist, truth, k_draws, n_shots,
                                   rng=derive_rng(7, k_draws, n_shots))
    plain = estimate_moments(rec)
    corr = estimate_moments(rec, bias_correct=True)
    print(f"{k_draws:>6} {n_shots:>6} {plain.m1_hat:>9.5f} "
          f"{plain.m2_hat:>9.5f} {corr.m2_hat:>12.5f}")
print(f"{'truth':>6} {'':>6} {m1_true:>9.5f} {m2_true:>9.5f} {m2_true:>12.5f}")
print(f"\nplain-m2 bias at N=20 is about E{{P0(1-P0)}}/N = "
      f"{(m1_true - m2_true) / 20:.5f}; the corrected column removes it.")

rec = run_multiple_preparation(dist, truth, 5000, 100, rng=derive_rng(99))
var = generalized_moment(rec, lambda x: (x - estimate_moments(rec).m1_hat) ** 2)
print(f"\ngeneralized moment g(x)=(x-m1)^2 on the same record: {var:.6f} "
      "(the sample variance of the frequency estimates)")
