"""General single-qubit unitary process and its outcome-0 probability.

Any single-qubit unitary can be written with four angles,

    M = e^{i phi1} [ e^{i(-phi2/2 - phi4/2)} cos(phi3/2)   -e^{i(-phi2/2 + phi4/2)} sin(phi3/2) ]
                   [ e^{i( phi2/2 - phi4/2)} sin(phi3/2)    e^{i( phi2/2 + phi4/2)} cos(phi3/2) ],

and for an input [r, sqrt(1-r^2) e^{i phi}] the outcome-0 probability of
a computational-basis measurement on the output collapses to

    P0 = cos(phi3) r^2 + (1 - cos(phi3))/2
         - cos(phi4 + phi) sin(phi3) r sqrt(1 - r^2),       P1 = 1 - P0,

independent of phi1 (global phase) and of phi2.  The closed form is the
production path; the matrix route exists as an independent test oracle
for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import validate_state

__all__ = [
    "UnitaryParams",
    "build_unitary",
    "apply_process",
    "p0_closed_form",
]

# Tolerated floating-point excursion of P0 outside [0, 1]; anything
# larger signals a genuine formula/transcription bug.
_P0_EXCURSION_TOL = 1e-9


@dataclass(frozen=True)
class UnitaryParams:
    """Angles (phi1..phi4), in radians, of the unitary model above.

    phi3 and phi4 are restricted to [-pi, pi] (the range in which they
    are recovered); phi1 and phi2 are unrestricted.  phi1 never affects
    measurement statistics and phi2 does not affect computational-basis
    statistics, so neither is identifiable here.
    """

    phi1: float
    phi2: float
    phi3: float
    phi4: float

    def __post_init__(self):
        vals = (self.phi1, self.phi2, self.phi3, self.phi4)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("unitary angles must be finite")
        for name, v in (("phi3", self.phi3), ("phi4", self.phi4)):
            if abs(v) > math.pi + 1e-12:
                raise ValueError(f"{name} must lie in [-pi, pi], got {v}")


def build_unitary(params: UnitaryParams) -> np.ndarray:
    """2x2 unitary matrix for the given angles."""
    half3 = params.phi3 / 2.0
    c, s = math.cos(half3), math.sin(half3)
    h2, h4 = params.phi2 / 2.0, params.phi4 / 2.0
    m = np.array([
        [np.exp(1j * (-h2 - h4)) * c, -np.exp(1j * (-h2 + h4)) * s],
        [np.exp(1j * (h2 - h4)) * s, np.exp(1j * (h2 + h4)) * c],
    ], dtype=np.complex128)
    return np.exp(1j * params.phi1) * m


def apply_process(matrix: np.ndarray, state: np.ndarray) -> np.ndarray:
    """Output amplitude vector ``matrix @ state``.

    ``matrix`` must be square and match the state dimension; unitarity
    keeps the output normalized.
    """
    m = np.asarray(matrix, dtype=np.complex128)
    c = validate_state(state)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[1] != c.size:
        raise ValueError(
            f"dimension mismatch: matrix {m.shape} vs state length {c.size}")
    return m @ c


def p0_closed_form(phi3, phi4, r, phi):
    """Outcome-0 probability of the processed state, closed form.

    Accepts scalars or broadcastable arrays for ``r`` and ``phi``
    (moduli must lie in [0, 1]).  Values escaping [0, 1] by no more than
    1e-9 (floating-point excursions) are clamped to the boundary; larger
    escapes raise ``ValueError``.
    """
    r = np.asarray(r, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    if np.any(r < 0.0) or np.any(r > 1.0):
        raise ValueError("modulus r must lie in [0, 1]")
    c3 = math.cos(phi3)
    s3 = math.sin(phi3)
    p0 = (c3 * r ** 2 + (1.0 - c3) / 2.0
          - np.cos(phi4 + phi) * s3 * r * np.sqrt(1.0 - r ** 2))
    if np.any(p0 < -_P0_EXCURSION_TOL) or np.any(p0 > 1.0 + _P0_EXCURSION_TOL):
        raise ValueError("formula inconsistency: probability outside [0, 1]")
    p0 = np.clip(p0, 0.0, 1.0)
    return p0 if p0.ndim else float(p0)
