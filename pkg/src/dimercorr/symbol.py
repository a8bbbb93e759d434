"""The 2x2 matrix symbol phi of the block Toeplitz representation.

All evaluators work in the variable z and rewrite trigonometric quantities
through ``cos x = (z + 1/z)/2`` and ``sin x = (z - 1/z)/(2i)``, so the same
code runs on circles of any radius.  On the unit circle the scalar weight
uses the positive square root of ``t^2 + sin^2 x + sin^4 x``; off the unit
circle it uses the factorized radicand ``f(z) f(1/z)`` with branch-fixed
square roots of each factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._linalg import adj, mat2
from .errors import SingularSymbolError
from .params import Parameters

_SINGULAR_TOL = 1e-14


def _t(t_or_params) -> float:
    return t_or_params.t if isinstance(t_or_params, Parameters) else float(t_or_params)


def cos_z(z):
    return (z + 1 / z) / 2


def sin_z(z):
    return (z - 1 / z) / 2j


def p_entry(t: float, z):
    z = np.asarray(z, dtype=complex)
    s = sin_z(z)
    return (t * cos_z(z) + s * s) * (t - z)


def q_entry(t: float, z):
    z = np.asarray(z, dtype=complex)
    return sin_z(z) * (z - t) * (1 / z - t)


def pi_matrix(t_or_params, z):
    """The trigonometric-polynomial part pi(z) of phi = sigma * pi."""
    t = _t(t_or_params)
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise SingularSymbolError("pi(z) is undefined at z = 0")
    return mat2(p_entry(t, z), q_entry(t, z), q_entry(t, 1 / z), p_entry(t, 1 / z))


eval_pi = pi_matrix


def f_scalar(params: Parameters, z):
    """f(z) = (z^2 - eta1^2)(z^2 - eta2^2) / (4 eta1 eta2)."""
    z = np.asarray(z, dtype=complex)
    e1, e2 = params.eta1, params.eta2
    return (z * z - e1 * e1) * (z * z - e2 * e2) / (4 * e1 * e2)


def sqrt_f(params: Parameters, z):
    """Branch-fixed square root of f, analytic for |z| < min|eta_j|.

    f(z) = (eta1 eta2 / 4)(1 - z^2/eta1^2)(1 - z^2/eta2^2); each factor in
    parentheses stays in the right half-plane inside that disk, so principal
    roots are continuous there.  eta1 eta2 is real positive in both regimes.
    """
    z = np.asarray(z, dtype=complex)
    e1, e2 = params.eta1, params.eta2
    pref = 0.5 * np.sqrt(complex((e1 * e2).real, 0.0))
    return pref * np.sqrt(1 - (z / e1) ** 2) * np.sqrt(1 - (z / e2) ** 2)


def g_scalar(params: Parameters, z):
    """g(z) with det pi(z) = g(z) g(1/z); zero-free on the closed unit disk."""
    z = np.asarray(z, dtype=complex)
    e1, e2 = params.eta1, params.eta2
    return (z - params.tau) * (z * z - e1 * e1) * (z * z - e2 * e2) / (4 * params.tau * e1 * e2)


def radicand(t: float, z):
    """t^2 + sin^2 x + sin^4 x written in z."""
    s2 = sin_z(np.asarray(z, dtype=complex)) ** 2
    return t * t + s2 + s2 * s2


def radicand_factorized(params: Parameters, z):
    z = np.asarray(z, dtype=complex)
    e1, e2 = params.eta1, params.eta2
    zi = 1 / z
    return ((zi**2 - e1**2) * (zi**2 - e2**2) * (z**2 - e1**2) * (z**2 - e2**2)
            / (16 * e1**2 * e2**2))


def _denominator(t: float, z):
    # 1 - 2 t cos x + t^2 = (z - t)(1/z - t)
    d = (z - t) * (1 / z - t)
    if np.any(np.abs(d) < _SINGULAR_TOL):
        raise SingularSymbolError("1 - 2 t cos x + t^2 vanishes on the contour")
    return d


def sigma_unit(t_or_params, x):
    """Scalar weight sigma(e^{ix}) for real x, positive root."""
    t = _t(t_or_params)
    x = np.asarray(x, dtype=float)
    z = np.exp(1j * x)
    s2 = np.sin(x) ** 2
    return 1.0 / (_denominator(t, z).real * np.sqrt(t * t + s2 + s2 * s2))


def sigma_z(params: Parameters, z):
    """Analytic continuation of sigma into the annulus 1/min|eta| < |z| < min|eta|."""
    z = np.asarray(z, dtype=complex)
    return 1.0 / (_denominator(params.t, z) * sqrt_f(params, z) * sqrt_f(params, 1 / z))


def eval_phi(t_or_params, x):
    """phi(e^{ix}) for real x (scalar or array)."""
    t = _t(t_or_params)
    z = np.exp(1j * np.asarray(x, dtype=float))
    return sigma_unit(t, x)[..., None, None] * pi_matrix(t, z)


def phi_z(params: Parameters, z):
    """phi at arbitrary z inside its annulus of analyticity."""
    return sigma_z(params, z)[..., None, None] * pi_matrix(params, z)


def eval_psi(t_or_params, x):
    """psi = phi^{-1} on the unit circle, via the adjugate and det phi."""
    t = _t(t_or_params)
    z = np.exp(1j * np.asarray(x, dtype=float))
    # det phi = 1/((z - t)(1/z - t))
    return adj(eval_phi(t, x)) * _denominator(t, z)[..., None, None]


def det_phi_expected(t: float, z):
    return 1.0 / ((z - t) * (1 / z - t))


@dataclass(frozen=True)
class MatrixFunction2:
    """A 2x2 matrix function sampled at z_j = radius * exp(2 pi i j / N)."""

    radius: float
    samples: np.ndarray  # shape (N, 2, 2)

    def __post_init__(self):
        n = self.samples.shape[0]
        if n < 64 or n & (n - 1):
            raise ValueError(f"grid size must be a power of two >= 64, got {n}")
        if self.samples.shape[1:] != (2, 2):
            raise ValueError("samples must have shape (N, 2, 2)")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples contain NaN or Inf")

    @property
    def N(self) -> int:
        return self.samples.shape[0]

    @property
    def z(self) -> np.ndarray:
        return grid_points(self.radius, self.N)


def grid_points(radius: float, N: int) -> np.ndarray:
    return radius * np.exp(2j * np.pi * np.arange(N) / N)


def sample(f: Callable[[np.ndarray], np.ndarray], radius: float, N: int) -> MatrixFunction2:
    """Sample an evaluator ``f(z) -> (..., 2, 2)`` on a uniform circle grid."""
    z = grid_points(radius, N)
    vals = np.asarray(f(z), dtype=complex)
    if vals.shape == (2, 2):  # constant evaluator
        vals = np.broadcast_to(vals, (N, 2, 2)).copy()
    return MatrixFunction2(radius=float(radius), samples=vals)


def phi_on_circle(t_or_params) -> Callable[[np.ndarray], np.ndarray]:
    """Evaluator z -> phi(z) for unit-modulus z, suitable for ``sample``."""
    t = _t(t_or_params)
    return lambda z: eval_phi(t, np.angle(z))
