"""Recovery of the process angles (phi3, phi4) from outcome statistics.

Matching the first two moments of the random outcome-0 probability to
their closed forms gives a quadratic equation in cos(phi3),

    c2 cos^2(phi3) + c1 cos(phi3) + c0 = E{P0^2},

whose solution carries three intrinsic sign ambiguities:

    phi3 = eps2 * arccos( (-c1 + eps1 * sqrt(c1^2 - 4 c2 (c0 - m2))) / (2 c2) )
    phi4 = eps3 * arccos( (-m1 + cos(phi3) E{r^2} + (1 - cos(phi3))/2)
                          / (sin(phi3) E{cos phi} E{r sqrt(1-r^2)}) )

with eps1, eps2, eps3 in {-1, +1}.  ``blind_estimate`` enumerates all
sign branches using the *known statistical law* of the input (never its
realized values); ``nonblind_estimate`` replaces the analytic input
moments with sample means over measured input realizations.

Exactly symmetric branches (for instance +-phi4) reproduce the same
moments, so residual-based selection reports them as ties; an oracle
selection mode that compares candidates against the true angles is
provided for benchmark protocols.

The module also carries the density-matrix baseline: a diagonal
observable's mean, Tr(rho A) = E{P0} - 1/2 for A = diag(1/2, -1/2),
yields a single equation in the two unknowns, and
``baseline_identifiability_report`` exhibits two distinct angle pairs
with the same mean, i.e. that baseline cannot identify the process.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .moments import (
    InputMomentSet,
    QuadraticCoefficients,
    expected_p0,
    input_moments,
    quadratic_coefficients,
)
from .states import QubitInputDistribution

__all__ = [
    "SignChoice",
    "EstimateCandidate",
    "CandidateSet",
    "BaselineReport",
    "all_sign_choices",
    "solve_phi3",
    "solve_phi4",
    "blind_estimate",
    "nonblind_estimate",
    "sample_input_moments",
    "spin_z_observable",
    "mean_observable",
    "mean_function_of_observable",
    "baseline_identifiability_report",
    "select_candidate",
]

# Sampling noise routinely pushes arccos arguments marginally past +-1;
# beyond this the estimates are genuinely inconsistent with the model.
_ARCCOS_TOL = 1e-9
_SIN_PHI3_TOL = 1e-9
_LINEAR_FALLBACK_TOL = 1e-12


@dataclass(frozen=True)
class SignChoice:
    """One assignment of the three sign ambiguities (eps1, eps2, eps3)."""

    eps1: int
    eps2: int
    eps3: int

    def __post_init__(self):
        if any(e not in (-1, 1) for e in (self.eps1, self.eps2, self.eps3)):
            raise ValueError("sign components must be -1 or +1")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.eps1, self.eps2, self.eps3)


def all_sign_choices():
    """The eight sign assignments, in a fixed enumeration order."""
    return [SignChoice(e1, e2, e3)
            for e1, e2, e3 in product((1, -1), (1, -1), (1, -1))]


@dataclass(frozen=True)
class EstimateCandidate:
    """One solved (phi3, phi4) pair with its sign branch and residual.

    ``residual`` is |quadratic-form(phi3_hat) - m2_hat|; it vanishes for
    every unclamped branch, so it only separates candidates that needed
    boundary clamping.
    """

    phi3_hat: float
    phi4_hat: float
    signs: SignChoice
    residual: float

    def __post_init__(self):
        if abs(self.phi3_hat) > math.pi + 1e-12 or abs(self.phi4_hat) > math.pi + 1e-12:
            raise ValueError("estimates must lie in [-pi, pi]")


@dataclass(frozen=True)
class CandidateSet:
    """Successful candidates (sorted by residual) plus per-branch failures.

    ``failures`` holds one "(eps1,eps2,eps3): reason" entry for every
    sign branch that raised; when ``candidates`` is empty they explain
    why estimation failed.
    """

    candidates: tuple[EstimateCandidate, ...]
    failures: tuple[str, ...]

    def __iter__(self):
        return iter(self.candidates)

    def __len__(self):
        return len(self.candidates)

    def __bool__(self):
        return bool(self.candidates)


def _clamped_arccos(arg: float, context: str) -> float:
    if not math.isfinite(arg) or abs(arg) > 1.0 + _ARCCOS_TOL:
        raise ValueError(f"argument out of range in {context}: {arg!r}")
    arg = min(1.0, max(-1.0, arg))
    # snap ulp-level residue at the boundary to the exact endpoint:
    # an argument this close to +-1 is the exact-root case (estimation
    # noise sits orders of magnitude higher), and arccos' infinite slope
    # would otherwise turn it into a spurious 1e-8-sized angle that
    # slips past the sin(phi3) degeneracy guard
    if 1.0 - abs(arg) < 1e-14:
        arg = math.copysign(1.0, arg)
    return math.acos(arg)


def solve_phi3(coeffs: QuadraticCoefficients, m2_hat: float, signs: SignChoice) -> float:
    """Solve the quadratic in cos(phi3) for one sign branch.

    Returns eps2 * arccos(root).  Raises when the discriminant is
    negative beyond tolerance (moments inconsistent with the model),
    when the arccos argument escapes [-1, 1] beyond tolerance, or when
    the equation degenerates (c2 and c1 both ~ 0).
    """
    if abs(coeffs.c2) < _LINEAR_FALLBACK_TOL:
        if abs(coeffs.c1) < _LINEAR_FALLBACK_TOL:
            raise ValueError("degenerate moment equation: c2 and c1 both vanish")
        cos_phi3 = (m2_hat - coeffs.c0) / coeffs.c1
    else:
        disc = coeffs.c1 ** 2 - 4.0 * coeffs.c2 * (coeffs.c0 - m2_hat)
        if disc < -_ARCCOS_TOL:
            raise ValueError(
                "no real root: moment estimates inconsistent with model")
        cos_phi3 = (-coeffs.c1 + signs.eps1 * math.sqrt(max(disc, 0.0))) \
            / (2.0 * coeffs.c2)
    return signs.eps2 * _clamped_arccos(cos_phi3, "phi3 solve")


def solve_phi4(phi3: float, m1_hat: float, mom: InputMomentSet, eps3: int) -> float:
    """Solve the first-moment equation for phi4, given phi3.

    The phi4 term of E{P0} carries a sin(phi3) factor, so phi4 is
    unidentifiable when phi3 is at 0 or +-pi.
    """
    if eps3 not in (-1, 1):
        raise ValueError("eps3 must be -1 or +1")
    s3 = math.sin(phi3)
    if abs(s3) < _SIN_PHI3_TOL:
        raise ValueError("phi4 unidentifiable at phi3 in {0, +-pi}")
    c3 = math.cos(phi3)
    arg = (-m1_hat + c3 * mom.m_r2 + (1.0 - c3) / 2.0) \
        / (s3 * mom.m_c1 * mom.m_rs)
    return eps3 * _clamped_arccos(arg, "phi4 solve")


def _estimate_from_moments(
    mom: InputMomentSet, m1_hat: float, m2_hat: float
) -> CandidateSet:
    coeffs = quadratic_coefficients(mom, m1_hat)
    candidates: list[EstimateCandidate] = []
    failures: list[str] = []
    for signs in all_sign_choices():
        try:
            phi3 = solve_phi3(coeffs, m2_hat, signs)
            phi4 = solve_phi4(phi3, m1_hat, mom, signs.eps3)
        except ValueError as exc:
            failures.append(f"{signs.as_tuple()}: {exc}")
            continue
        residual = abs(coeffs.value(math.cos(phi3)) - m2_hat)
        candidates.append(EstimateCandidate(
            phi3_hat=phi3, phi4_hat=phi4, signs=signs, residual=residual))
    # stable sort keeps the fixed enumeration order among residual ties
    candidates.sort(key=lambda c: c.residual)
    return CandidateSet(candidates=tuple(candidates), failures=tuple(failures))


def blind_estimate(
    m1_hat: float, m2_hat: float, dist: QubitInputDistribution
) -> CandidateSet:
    """All sign-branch solutions using only the input's statistical law.

    ``m1_hat`` and ``m2_hat`` are the measured estimates of E{P0} and
    E{P0^2}; the input moments come from the known distribution, never
    from its realized values.  Branches that fail are dropped (reasons
    reported in ``failures``); the candidate list may be empty.
    """
    for name, v in (("m1_hat", m1_hat), ("m2_hat", m2_hat)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
    return _estimate_from_moments(input_moments(dist), m1_hat, m2_hat)


def sample_input_moments(input_samples) -> InputMomentSet:
    """Sample means of the six input moments over (r, phi) pairs."""
    samples = np.asarray(input_samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[1] != 2:
        raise ValueError("input_samples must be pairs (r, phi)")
    if samples.shape[0] < 2:
        raise ValueError("need at least 2 input samples")
    r = samples[:, 0]
    phi = samples[:, 1]
    if np.any(r < 0.0) or np.any(r > 1.0):
        raise ValueError("sampled moduli must lie in [0, 1]")
    root = np.sqrt(1.0 - r ** 2)
    return InputMomentSet(
        m_r2=float(np.mean(r ** 2)),
        m_r4=float(np.mean(r ** 4)),
        m_rs=float(np.mean(r * root)),
        m_r3s=float(np.mean(r ** 3 * root)),
        m_c1=float(np.mean(np.cos(phi))),
        m_c2=float(np.mean(np.cos(2.0 * phi))),
    )


def nonblind_estimate(input_samples, m1_hat: float, m2_hat: float) -> CandidateSet:
    """Sign-branch solutions with input moments estimated from samples.

    Identical to ``blind_estimate`` except that the six input moments
    are sample means over the measured ``input_samples`` (pairs
    (r, phi), at least two).  Degenerate sample moments (vanishing
    E{r sqrt(1-r^2)} or E{cos phi}) raise.
    """
    for name, v in (("m1_hat", m1_hat), ("m2_hat", m2_hat)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
    return _estimate_from_moments(sample_input_moments(input_samples), m1_hat, m2_hat)


def spin_z_observable() -> np.ndarray:
    """Matrix of the measured physical quantity: diag(1/2, -1/2)."""
    return np.diag([0.5, -0.5]).astype(np.complex128)


def mean_observable(rho: np.ndarray, observable: np.ndarray) -> float:
    """Tr(rho A), the standard mean of an observable.

    Both matrices must be Hermitian for the trace to be real; an
    imaginary residue above 1e-10 raises.
    """
    r = np.asarray(rho, dtype=np.complex128)
    a = np.asarray(observable, dtype=np.complex128)
    if r.shape != a.shape or r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError("rho and observable must be square with equal shape")
    tr = complex(np.trace(r @ a))
    if abs(tr.imag) >= 1e-10:
        raise ValueError(f"non-Hermitian inputs: Tr(rho A) = {tr!r}")
    return tr.real


def mean_function_of_observable(
    g_on_eigenvalues: Sequence[tuple[float, float]],
    mean_probs: Sequence[float],
) -> float:
    """Mean of g(A) for an observable diagonal in the measured basis.

    ``g_on_eigenvalues`` pairs each eigenvalue a_k with g(a_k);
    ``mean_probs`` holds the mean outcome probabilities E{P_k}.  The
    mean is sum_k g(a_k) E{P_k}: nonlinearity enters only through the
    fixed values g(a_k), never through higher statistics of P_k.
    """
    probs = np.asarray(mean_probs, dtype=np.float64)
    if len(g_on_eigenvalues) != probs.size:
        raise ValueError("g_on_eigenvalues and mean_probs lengths differ")
    if abs(float(np.sum(probs)) - 1.0) > 1e-9:
        raise ValueError("mean probabilities must sum to 1")
    return float(sum(gv * p for (_, gv), p in zip(g_on_eigenvalues, probs)))


@dataclass(frozen=True)
class BaselineReport:
    """Outcome of the density-matrix baseline on given data.

    ``trace_value`` is the estimated Tr(rho A) = m1_hat - 1/2.
    ``witness`` holds two distinct (phi3, phi4) pairs whose E{P0} both
    equal m1_hat: the single available equation cannot separate them.
    ``reason`` explains a missing witness.
    """

    trace_value: float
    witness: tuple[tuple[float, float], tuple[float, float]] | None
    reason: str | None = None


def baseline_identifiability_report(
    m1_hat: float, dist: QubitInputDistribution
) -> BaselineReport:
    """Show that the mean-of-observable baseline cannot identify the angles.

    Scans phi3 over (0, pi) and root-finds phi4 on the level set
    E{P0}(phi3, phi4) = m1_hat; any two solutions found are returned as
    the witness pair.  For interior values of m1_hat the level set is a
    curve, so a witness always exists.
    """
    trace_value = m1_hat - 0.5
    mom = input_moments(dist)

    def gap(phi3: float, phi4: float) -> float:
        c3 = math.cos(phi3)
        return (c3 * mom.m_r2 + (1.0 - c3) / 2.0
                - math.cos(phi4) * math.sin(phi3) * mom.m_c1 * mom.m_rs
                - m1_hat)

    solutions: list[tuple[float, float]] = []
    for phi3 in np.linspace(0.05 * math.pi, 0.95 * math.pi, 37):
        lo, hi = gap(phi3, 0.0), gap(phi3, math.pi)
        if lo == 0.0:
            solutions.append((float(phi3), 0.0))
        elif hi == 0.0:
            solutions.append((float(phi3), math.pi))
        elif lo * hi < 0.0:
            phi4 = brentq(lambda p4: gap(phi3, p4), 0.0, math.pi,
                          xtol=1e-14, rtol=1e-15)
            solutions.append((float(phi3), float(phi4)))
        if len(solutions) == 2:
            return BaselineReport(trace_value=trace_value,
                                  witness=(solutions[0], solutions[1]))
    return BaselineReport(trace_value=trace_value, witness=None,
                          reason="no witness found")


def select_candidate(
    candidates: Sequence[EstimateCandidate],
    mode: str = "residual",
    truth: tuple[float, float] | None = None,
) -> EstimateCandidate:
    """Pick one candidate: least residual, or closest to a known truth.

    ``residual`` mode is the deployable rule; it cannot split branches
    that reproduce the moments exactly (ties keep their deterministic
    order and the first is returned).  ``oracle`` mode minimizes the
    worse of the two relative errors against ``truth`` and is meant for
    benchmark protocols with known angles.
    """
    if not candidates:
        raise ValueError("estimation failed: no candidates")
    if mode == "residual":
        return min(candidates, key=lambda c: c.residual)
    if mode == "oracle":
        if truth is None:
            raise ValueError("oracle mode requires the true (phi3, phi4)")
        t3, t4 = truth
        if t3 == 0.0 or t4 == 0.0:
            raise ValueError("oracle mode needs non-zero true angles")

        def rel_err(c: EstimateCandidate) -> float:
            return max(abs(c.phi3_hat - t3) / abs(t3),
                       abs(c.phi4_hat - t4) / abs(t4))

        return min(candidates, key=rel_err)
    raise ValueError(f"unknown selection mode: {mode!r}")
