"""Two-level measurement simulation producing segmented shot records.

The procedure has two sampling levels: at the higher level, K
realizations of the random input state are drawn and pushed through the
process; at the lower level, each resulting outcome-0 probability P0_j
is probed with N prepared copies, i.e. N computational-basis
measurements.  The data stay *segmented*: each group of N shots belongs
to exactly one realization, so the per-realization probability can be
estimated as a sample frequency over that segment only.  Averaging the
per-segment estimates (and their squares) over the K segments estimates
E{P0} and E{P0^2}.

Shots within a segment are Bernoulli(P0_j), so the segment's outcome-0
count is exactly Binomial(N, P0_j) and is drawn in one step from
numpy's binomial sampler rather than shot by shot.

The plain mean of squared sample frequencies overestimates E{P0^2} by
E{P0 (1 - P0)} / N; an optional correction subtracts the unbiased
per-segment term p_hat (1 - p_hat) / (N - 1).  The correction is OFF by
default, which reproduces the literal two-moment procedure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .process import UnitaryParams, p0_closed_form
from .states import QubitInputDistribution, sample_input_realizations

__all__ = [
    "SegmentDiagnostics",
    "SegmentedRecord",
    "MomentEstimates",
    "simulate_segment",
    "run_multiple_preparation",
    "estimate_segment_probability",
    "estimate_moments",
    "generalized_moment",
    "joint_moment",
    "record_to_csv",
    "write_record_csv",
]


@dataclass(frozen=True)
class SegmentDiagnostics:
    """Per-segment ground truth (r, phi, P0), for diagnostics only.

    Never an input to the blind estimator, which sees only moment
    estimates.
    """

    r: np.ndarray
    phi: np.ndarray
    p0: np.ndarray


@dataclass(frozen=True)
class SegmentedRecord:
    """K segments of N shots each: outcome-0 counts per segment.

    ``count0[j]`` is the number of outcome-0 results among the
    ``n_shots`` measurements of segment j.  ``diagnostics`` optionally
    stores the drawn truth behind each segment.
    """

    n_shots: int
    count0: np.ndarray
    diagnostics: SegmentDiagnostics | None = None

    def __post_init__(self):
        counts = np.asarray(self.count0, dtype=np.int64)
        object.__setattr__(self, "count0", counts)
        if self.n_shots < 1:
            raise ValueError("n_shots must be >= 1")
        if counts.ndim != 1 or counts.size < 1:
            raise ValueError("record needs at least one segment")
        if np.any(counts < 0) or np.any(counts > self.n_shots):
            raise ValueError("segment counts must lie in [0, n_shots]")

    @property
    def n_segments(self) -> int:
        return int(self.count0.size)

    def p_hat(self) -> np.ndarray:
        """Per-segment sample frequencies count0 / n_shots."""
        return self.count0 / self.n_shots


@dataclass(frozen=True)
class MomentEstimates:
    """Estimates of E{P0} and E{P0^2} from a segmented record."""

    m1_hat: float
    m2_hat: float
    k_used: int
    n_used: int

    def __post_init__(self):
        if not 0.0 <= self.m1_hat <= 1.0:
            raise ValueError(f"m1_hat outside [0, 1]: {self.m1_hat!r}")
        if not 0.0 <= self.m2_hat <= 1.0:
            raise ValueError(f"m2_hat outside [0, 1]: {self.m2_hat!r}")
        if self.m2_hat > self.m1_hat + 1e-12:
            raise ValueError("m2_hat exceeds m1_hat: impossible for P0 in [0, 1]")


def simulate_segment(p0: float, n_shots: int, rng: np.random.Generator) -> int:
    """Outcome-0 count of one segment: a Binomial(n_shots, p0) draw."""
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must lie in [0, 1], got {p0}")
    if n_shots < 1:
        raise ValueError("n_shots must be >= 1")
    return int(rng.binomial(n_shots, p0))


def run_multiple_preparation(
    dist: QubitInputDistribution,
    params: UnitaryParams,
    k_draws: int,
    n_shots: int,
    rng: np.random.Generator,
    keep_diagnostics: bool = False,
) -> SegmentedRecord:
    """Simulate the full two-level procedure.

    Draws ``k_draws`` input realizations, computes each processed
    outcome-0 probability in closed form, and simulates one
    ``n_shots``-measurement segment per realization.  Segments are
    ordered by draw index.  Draws are batched (all moduli, then all
    phases, then all counts), so a given generator state yields a
    bit-identical record on rerun.
    """
    if k_draws < 1 or n_shots < 1:
        raise ValueError("k_draws and n_shots must be >= 1")
    r, phi = sample_input_realizations(dist, k_draws, rng)
    p0 = p0_closed_form(params.phi3, params.phi4, r, phi)
    count0 = rng.binomial(n_shots, p0).astype(np.int64)
    diag = SegmentDiagnostics(r=r, phi=phi, p0=p0) if keep_diagnostics else None
    return SegmentedRecord(n_shots=n_shots, count0=count0, diagnostics=diag)


def estimate_segment_probability(count0, n_shots: int):
    """Sample frequency count0 / n_shots (scalar or array)."""
    counts = np.asarray(count0)
    if n_shots < 1:
        raise ValueError("n_shots must be >= 1")
    if np.any(counts < 0) or np.any(counts > n_shots):
        raise ValueError("count0 must lie in [0, n_shots]")
    p = counts / n_shots
    return p if p.ndim else float(p)


def estimate_moments(record: SegmentedRecord, bias_correct: bool = False) -> MomentEstimates:
    """First and second moment estimates of P0 from a segmented record.

    ``m1_hat`` is the mean of the per-segment sample frequencies.
    Without correction ``m2_hat`` is the mean of their squares; with
    ``bias_correct`` the unbiased per-segment term
    ``p_hat (1 - p_hat) / (n_shots - 1)`` is subtracted (requires
    n_shots >= 2).
    """
    p_hat = record.p_hat()
    m1 = float(np.mean(p_hat))
    if bias_correct:
        if record.n_shots < 2:
            raise ValueError("bias correction needs N >= 2")
        m2 = float(np.mean(p_hat ** 2 - p_hat * (1.0 - p_hat) / (record.n_shots - 1)))
    else:
        m2 = float(np.mean(p_hat ** 2))
    return MomentEstimates(m1_hat=m1, m2_hat=m2,
                           k_used=record.n_segments, n_used=record.n_shots)


def generalized_moment(record: SegmentedRecord, g: Callable[[float], float]) -> float:
    """Mean of g(p_hat_j) over the segments, for a scalar function g."""
    p_hat = record.p_hat()
    return float(np.mean([g(float(p)) for p in p_hat]))


def joint_moment(
    prob_estimates: np.ndarray,
    exponents: Sequence[tuple[int, int]],
) -> float:
    """Mean over segments of a product of outcome-probability powers.

    ``prob_estimates`` has one row per segment and one column per
    outcome; ``exponents`` lists (outcome index, power) pairs with
    distinct indices and non-negative integer powers.  An empty exponent
    list yields 1.0.
    """
    probs = np.asarray(prob_estimates, dtype=np.float64)
    if probs.ndim != 2:
        raise ValueError("prob_estimates must have shape (segments, outcomes)")
    indices = [k for k, _ in exponents]
    if len(set(indices)) != len(indices):
        raise ValueError("outcome indices must be distinct")
    factors = np.ones(probs.shape[0])
    for k, m in exponents:
        if not 0 <= k < probs.shape[1]:
            raise ValueError(f"outcome index {k} out of range")
        if m < 0 or m != int(m):
            raise ValueError("exponents must be non-negative integers")
        factors = factors * probs[:, k] ** int(m)
    return float(np.mean(factors))


def record_to_csv(record: SegmentedRecord) -> str:
    """CSV dump (segment_index, n_shots, count0, p_hat) for debugging.

    Frequencies carry 17 significant digits, enough to round-trip the
    exact float value.
    """
    lines = ["segment_index,n_shots,count0,p_hat"]
    p_hat = record.p_hat()
    for j in range(record.n_segments):
        lines.append(f"{j},{record.n_shots},{int(record.count0[j])},{p_hat[j]:.17g}")
    return "\n".join(lines) + "\n"


def write_record_csv(record: SegmentedRecord, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(record_to_csv(record))
