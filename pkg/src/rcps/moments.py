"""Closed-form input moments and the forward moment model.

For r uniform on [a, b] and phi uniform on [-phi_m, phi_m] the six
input moments consumed by the estimator are

    E{r^2}            = (a^2 + ab + b^2) / 3
    E{r^4}            = (a^4 + a^3 b + a^2 b^2 + a b^3 + b^4) / 5
    E{r sqrt(1-r^2)}  = -[(1-b^2)^{3/2} - (1-a^2)^{3/2}] / (3 (b-a))
    E{r^3 sqrt(1-r^2)}= [-(1/3)((1-b^2)^{3/2} - (1-a^2)^{3/2})
                         + (1/5)((1-b^2)^{5/2} - (1-a^2)^{5/2})] / (b-a)
    E{cos(phi)}       = sin(phi_m) / phi_m
    E{cos(2 phi)}     = sin(2 phi_m) / (2 phi_m).

From these, the first two moments of the random outcome-0 probability
P0 of the processed state are available in closed form:

    E{P0}     = cos(phi3) E{r^2} + (1 - cos(phi3))/2
                - cos(phi4) sin(phi3) E{cos(phi)} E{r sqrt(1-r^2)}
    E{P0^2}   = c2 cos(phi3)^2 + c1 cos(phi3) + c0,

where the quadratic coefficients (c2, c1, c0) and the subterms (e1, e2)
are functions of the input moments and of E{P0}; see
``quadratic_coefficients``.  The quadratic form in cos(phi3) is what the
moment-matching estimator inverts.  All formulas here are validated in
the test suite against an independent numerical-quadrature oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .states import QubitInputDistribution

__all__ = [
    "InputMomentSet",
    "QuadraticCoefficients",
    "input_moments",
    "expected_p0",
    "quadratic_coefficients",
    "expected_p0_squared",
]

_TOL = 1e-12
# Below this, the moment-matching denominators are unusable.
_DEGENERATE_TOL = 1e-14


@dataclass(frozen=True)
class InputMomentSet:
    """The six input-distribution moments used by the forward model.

    Fields (all plain floats): ``m_r2`` = E{r^2}, ``m_r4`` = E{r^4},
    ``m_rs`` = E{r sqrt(1-r^2)}, ``m_r3s`` = E{r^3 sqrt(1-r^2)},
    ``m_c1`` = E{cos phi}, ``m_c2`` = E{cos 2 phi}.  May hold analytic
    values or sample means (non-blind estimation).
    """

    m_r2: float
    m_r4: float
    m_rs: float
    m_r3s: float
    m_c1: float
    m_c2: float

    def __post_init__(self):
        vals = (self.m_r2, self.m_r4, self.m_rs, self.m_r3s,
                self.m_c1, self.m_c2)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("input moments must be finite")
        if not -_TOL <= self.m_r4 <= self.m_r2 + _TOL or self.m_r2 > 1.0 + _TOL:
            raise ValueError("moment ordering 0 <= E{r^4} <= E{r^2} <= 1 violated")
        if not -_TOL <= self.m_rs <= 0.5 + _TOL:
            raise ValueError("E{r sqrt(1-r^2)} must lie in [0, 1/2]")
        if not -_TOL <= self.m_r3s <= self.m_rs + _TOL:
            raise ValueError("E{r^3 sqrt(1-r^2)} must lie in [0, E{r sqrt(1-r^2)}]")
        if abs(self.m_c1) > 1.0 + _TOL or abs(self.m_c2) > 1.0 + _TOL:
            raise ValueError("cosine moments must lie in [-1, 1]")


@dataclass(frozen=True)
class QuadraticCoefficients:
    """Coefficients of E{P0^2} = c2 cos^2(phi3) + c1 cos(phi3) + c0.

    ``e1`` and ``e2`` are the shared subterms; ``c1`` and ``c0`` embed
    the E{P0} value that was supplied when they were computed.
    """

    c2: float
    c1: float
    c0: float
    e1: float
    e2: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in
                   (self.c2, self.c1, self.c0, self.e1, self.e2)):
            raise ValueError("quadratic coefficients must be finite")

    def value(self, cos_phi3: float) -> float:
        """Evaluate the quadratic form at the given cos(phi3)."""
        return (self.c2 * cos_phi3 + self.c1) * cos_phi3 + self.c0


def input_moments(dist: QubitInputDistribution) -> InputMomentSet:
    """Exact moments of the uniform input law (closed forms above)."""
    a, b, pm = dist.r_min, dist.r_max, dist.phi_bound
    wa = (1.0 - a * a) ** 1.5
    wb = (1.0 - b * b) ** 1.5
    va = (1.0 - a * a) ** 2.5
    vb = (1.0 - b * b) ** 2.5
    return InputMomentSet(
        m_r2=(a * a + a * b + b * b) / 3.0,
        m_r4=(a ** 4 + a ** 3 * b + a * a * b * b + a * b ** 3 + b ** 4) / 5.0,
        m_rs=-(wb - wa) / (3.0 * (b - a)),
        m_r3s=(-(wb - wa) / 3.0 + (vb - va) / 5.0) / (b - a),
        m_c1=math.sin(pm) / pm,
        m_c2=math.sin(2.0 * pm) / (2.0 * pm),
    )


def expected_p0(phi3: float, phi4: float, mom: InputMomentSet) -> float:
    """Mean of the random outcome-0 probability, E{P0}."""
    c3 = math.cos(phi3)
    val = (c3 * mom.m_r2 + (1.0 - c3) / 2.0
           - math.cos(phi4) * math.sin(phi3) * mom.m_c1 * mom.m_rs)
    if not -1e-9 <= val <= 1.0 + 1e-9:
        raise ValueError("formula inconsistency: E{P0} outside [0, 1]")
    return min(max(val, 0.0), 1.0)


def quadratic_coefficients(mom: InputMomentSet, mean_p0: float) -> QuadraticCoefficients:
    """Coefficients of the quadratic form for E{P0^2}.

    ``mean_p0`` is the E{P0} value to embed: the analytic one when
    evaluating the forward model, or its estimate when solving the
    moment-matching equations.  Requires non-degenerate denominators
    E{r sqrt(1-r^2)} and E{cos phi}.
    """
    if abs(mom.m_rs) < _DEGENERATE_TOL or abs(mom.m_c1) < _DEGENERATE_TOL:
        raise ValueError("degenerate input distribution for moment matching")
    if not math.isfinite(mean_p0):
        raise ValueError("mean_p0 must be finite")
    dr = mom.m_r2 - mom.m_r4
    e1 = 0.5 - mom.m_r3s / mom.m_rs
    e2 = mom.m_c2 * dr / (mom.m_c1 * mom.m_rs) ** 2
    c2 = (0.25 + 0.5 * dr * (mom.m_c2 - 3.0)
          + 2.0 * e1 * (mom.m_r2 - 0.5)
          + e2 * (mom.m_r2 - 0.5) ** 2)
    c1 = (1.0 - 2.0 * mean_p0) * (e1 + e2 * (mom.m_r2 - 0.5))
    c0 = (mean_p0 - 0.25 + e2 * (mean_p0 - 0.5) ** 2
          + 0.5 * (1.0 - mom.m_c2) * dr)
    return QuadraticCoefficients(c2=c2, c1=c1, c0=c0, e1=e1, e2=e2)


def expected_p0_squared(phi3: float, phi4: float, mom: InputMomentSet) -> float:
    """Second moment E{P0^2} via the quadratic form in cos(phi3)."""
    coeffs = quadratic_coefficients(mom, expected_p0(phi3, phi4, mom))
    return coeffs.value(math.cos(phi3))
