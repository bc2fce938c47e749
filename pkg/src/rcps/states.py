"""Single-qubit states with randomly drawn coefficients.

A state realization is a plain complex amplitude vector ``c`` of length
d >= 2 in computational-basis order (k = 0 .. d-1) with unit norm.  For
one qubit the realizations handled here have the polar form

    c = [r, sqrt(1 - r^2) * exp(i * phi)],

where the modulus ``r`` and the relative phase ``phi`` are drawn from
independent uniform laws.  The first coefficient is kept real and
non-negative at sampling time (global-phase convention); states that
went through a process keep whatever phases they acquired, since only
the squared moduli are consumed downstream.

Outcome-k probability of a computational-basis measurement is |c_k|^2,
so across random draws the probability vector is itself a random
quantity.  The per-realization projector ``c c^H`` and its ensemble
average (the usual density matrix) are provided for the baseline
comparisons; the mean density matrix retains only second-order
statistics of the coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "NORM_TOL",
    "QubitInputDistribution",
    "qubit_state",
    "validate_state",
    "sample_input_realization",
    "sample_input_realizations",
    "probabilities",
    "realization_density",
    "mean_density",
    "validate_density",
]

# ~100x double-precision epsilon accumulated over d=2 arithmetic
NORM_TOL = 1e-12


@dataclass(frozen=True)
class QubitInputDistribution:
    """Uniform law of the input qubit parameters (r, phi).

    ``r`` is uniform on [r_min, r_max] with 0 <= r_min < r_max <= 1 and
    ``phi`` is uniform on [-phi_bound, +phi_bound] with
    0 < phi_bound <= pi.  The two are drawn independently.
    """

    r_min: float
    r_max: float
    phi_bound: float

    def __post_init__(self):
        if not (math.isfinite(self.r_min) and math.isfinite(self.r_max)
                and math.isfinite(self.phi_bound)):
            raise ValueError("distribution bounds must be finite")
        if not 0.0 <= self.r_min < self.r_max <= 1.0:
            raise ValueError(
                f"modulus bounds must satisfy 0 <= r_min < r_max <= 1, "
                f"got [{self.r_min}, {self.r_max}]")
        if not 0.0 < self.phi_bound <= math.pi:
            raise ValueError(
                f"phase bound must lie in (0, pi], got {self.phi_bound}")


def qubit_state(r: float, phi: float) -> np.ndarray:
    """Amplitude vector [r, sqrt(1 - r^2) * exp(i*phi)] for r in [0, 1]."""
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"modulus must lie in [0, 1], got {r}")
    return np.array([r, math.sqrt(1.0 - r * r) * np.exp(1j * phi)],
                    dtype=np.complex128)


def validate_state(amplitudes: np.ndarray, tol: float = NORM_TOL) -> np.ndarray:
    """Check that ``amplitudes`` is a valid normalized state vector.

    Returns the vector as a complex ndarray.  Raises ``ValueError`` on a
    non-finite entry, dimension < 2, or a squared norm off unity by more
    than ``tol``.
    """
    c = np.asarray(amplitudes, dtype=np.complex128)
    if c.ndim != 1 or c.size < 2:
        raise ValueError("state must be a 1-D amplitude vector with d >= 2")
    if not np.all(np.isfinite(c.view(np.float64))):
        raise ValueError("state amplitudes must be finite")
    norm2 = float(np.sum(np.abs(c) ** 2))
    if abs(norm2 - 1.0) > tol:
        raise ValueError(f"state not normalized: sum |c_k|^2 = {norm2!r}")
    return c


def sample_input_realization(
    dist: QubitInputDistribution, rng: np.random.Generator
) -> tuple[float, float, np.ndarray]:
    """Draw one (r, phi) pair and the corresponding state vector.

    ``r`` is consumed from ``rng`` first, then ``phi``; the draws are
    independent.  Same generator state implies a bit-identical result.
    """
    r = float(rng.uniform(dist.r_min, dist.r_max))
    phi = float(rng.uniform(-dist.phi_bound, dist.phi_bound))
    return r, phi, qubit_state(r, phi)


def sample_input_realizations(
    dist: QubitInputDistribution, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``count`` (r, phi) pairs as two arrays.

    Batched variant used on hot paths: all moduli are drawn first, then
    all phases.  Amplitude vectors can be formed with ``qubit_state``
    when needed.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    r = rng.uniform(dist.r_min, dist.r_max, size=count)
    phi = rng.uniform(-dist.phi_bound, dist.phi_bound, size=count)
    return r, phi


def probabilities(state: np.ndarray) -> np.ndarray:
    """Computational-basis outcome probabilities p_k = |c_k|^2.

    Computed as re^2 + im^2, bit-identical to the diagonal of the
    realization projector.
    """
    c = validate_state(state)
    return c.real ** 2 + c.imag ** 2


def realization_density(state: np.ndarray) -> np.ndarray:
    """Rank-one projector c c^H of a single state realization.

    Entry (k, l) is ``c_k * conj(c_l)``; the diagonal equals
    ``probabilities(state)`` exactly (it is written as re^2 + im^2,
    sidestepping FMA rounding differences in the vectorized outer
    product).
    """
    c = validate_state(state)
    rho = np.outer(c, np.conj(c))
    rho[np.diag_indices_from(rho)] = c.real ** 2 + c.imag ** 2
    return rho


def mean_density(states: Iterable[Sequence[complex]] | Sequence[np.ndarray]) -> np.ndarray:
    """Entrywise average of the realization projectors of ``states``.

    The result is Hermitian (exactly, the projectors are) with unit
    trace up to accumulation error.  Raises on an empty collection.
    """
    total = None
    count = 0
    for state in states:
        rho = realization_density(state)
        total = rho if total is None else total + rho
        count += 1
    if total is None:
        raise ValueError("no realizations")
    return total / count


def validate_density(rho: np.ndarray,
                     hermit_tol: float = 1e-12,
                     trace_tol: float = 1e-12,
                     psd_tol: float = 1e-10) -> np.ndarray:
    """Check Hermiticity, unit trace and positive semidefiniteness."""
    m = np.asarray(rho, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("density matrix must be square")
    if np.max(np.abs(m - m.conj().T)) > hermit_tol:
        raise ValueError("density matrix not Hermitian")
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr!r} differs from 1")
    if np.min(np.linalg.eigvalsh(m)) < -psd_tol:
        raise ValueError("density matrix not positive semidefinite")
    return m
