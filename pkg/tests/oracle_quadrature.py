"""Independent numerical oracles shared by the test modules.

Everything here deliberately avoids the closed forms under test:
probabilities come from explicit 2x2 matrix algebra and expectations
from Gauss-Legendre quadrature of the defining integrals.  The
substitution r = sin(theta) removes the square-root endpoint behaviour
at r = 1, so the integrands are smooth and the tensor rule converges to
machine precision at moderate order.
"""

from __future__ import annotations

import numpy as np

DEFAULT_ORDER = 96


def unitary_matrix(phi1: float, phi2: float, phi3: float, phi4: float) -> np.ndarray:
    """The four-angle single-qubit unitary, written out directly."""
    h3 = phi3 / 2.0
    return np.exp(1j * phi1) * np.array([
        [np.exp(1j * (-phi2 / 2 - phi4 / 2)) * np.cos(h3),
         -np.exp(1j * (-phi2 / 2 + phi4 / 2)) * np.sin(h3)],
        [np.exp(1j * (phi2 / 2 - phi4 / 2)) * np.sin(h3),
         np.exp(1j * (phi2 / 2 + phi4 / 2)) * np.cos(h3)],
    ], dtype=np.complex128)


def matrix_route_p0(phi1, phi2, phi3, phi4, r, phi):
    """P0 through explicit state propagation: |(M c_in)_0|^2.

    Vectorized over broadcastable arrays ``r`` and ``phi``.
    """
    m = unitary_matrix(phi1, phi2, phi3, phi4)
    c0 = np.asarray(r, dtype=np.complex128)
    c1 = np.sqrt(1.0 - np.asarray(r, dtype=np.float64) ** 2) * np.exp(1j * np.asarray(phi))
    out0 = m[0, 0] * c0 + m[0, 1] * c1
    return np.abs(out0) ** 2


def _gl_nodes(lo: float, hi: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (hi - lo) * x + 0.5 * (hi + lo), 0.5 * (hi - lo) * w


def quad_moment_p0(phi3, phi4, r_min, r_max, phi_bound, power,
                   order: int = DEFAULT_ORDER,
                   phi1: float = 0.37, phi2: float = -1.21) -> float:
    """E{P0^power} for r ~ U[r_min, r_max], phi ~ U[-phi_bound, phi_bound].

    Tensor Gauss-Legendre quadrature of the defining double integral,
    with P0 evaluated through the matrix route (the fixed, arbitrary
    phi1 and phi2 must not matter).
    """
    theta, w_theta = _gl_nodes(np.arcsin(r_min), np.arcsin(r_max), order)
    phis, w_phi = _gl_nodes(-phi_bound, phi_bound, order)
    r = np.sin(theta)[:, None]
    density = np.cos(theta)[:, None] / ((r_max - r_min) * 2.0 * phi_bound)
    values = matrix_route_p0(phi1, phi2, phi3, phi4, r, phis[None, :]) ** power
    return float(np.sum(values * density * w_theta[:, None] * w_phi[None, :]))


def quad_radial_moment(f, r_min, r_max, order: int = DEFAULT_ORDER) -> float:
    """E{f(r)} for r uniform on [r_min, r_max] (same substitution)."""
    theta, w_theta = _gl_nodes(np.arcsin(r_min), np.arcsin(r_max), order)
    r = np.sin(theta)
    return float(np.sum(f(r) * np.cos(theta) * w_theta) / (r_max - r_min))


def quad_phase_moment(f, phi_bound, order: int = DEFAULT_ORDER) -> float:
    """E{f(phi)} for phi uniform on [-phi_bound, phi_bound]."""
    phis, w = _gl_nodes(-phi_bound, phi_bound, order)
    return float(np.sum(f(phis) * w) / (2.0 * phi_bound))


def quad_input_moments(r_min, r_max, phi_bound,
                       order: int = DEFAULT_ORDER) -> tuple[float, ...]:
    """The six input moments by quadrature of their defining integrals."""
    return (
        quad_radial_moment(lambda r: r ** 2, r_min, r_max, order),
        quad_radial_moment(lambda r: r ** 4, r_min, r_max, order),
        quad_radial_moment(lambda r: r * np.sqrt(1 - r ** 2), r_min, r_max, order),
        quad_radial_moment(lambda r: r ** 3 * np.sqrt(1 - r ** 2), r_min, r_max, order),
        quad_phase_moment(np.cos, phi_bound, order),
        quad_phase_moment(lambda p: np.cos(2 * p), phi_bound, order),
    )
