"""The Hankel-product operator Lambda and the Fredholm side of the determinant identity.

With alpha = phi_minus theta_plus^{-1} and beta(z) = theta_minus^{-1}(1/z) phi_plus(1/z),

    det T_n(phi) = E * det(I - Lambda),   Lambda_jk = sum_a alpha_{j+n+a+1} beta_{k+n+a+1},

so K2(n) = K2(inf) sqrt(det(I - Lambda)).  Both alpha and beta are analytic
up to the branch points at +-eta_p, which is why their positive-index
coefficients are taken on a circle just inside min |eta_p|.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from ._linalg import SIGMA3, T, adj
from .errors import AliasError, ToleranceError, TruncationError
from .params import Parameters, compute_parameters
from .quadrature import BlockFourierSeries, auto_fourier
from .wienerhopf import Factorization, build_factorization

EPS_TRUNC = 1e-16
DELTA = 0.05


def order_parameter_E(t: float) -> float:
    """E = t / (2t(2+t^2) + (1+2t^2) sqrt(2+t^2))."""
    return t / (2 * t * (2 + t * t) + (1 + 2 * t * t) * np.sqrt(2 + t * t))


def k2_infinity(t: float) -> float:
    return 0.5 * np.sqrt(order_parameter_E(t))


def alpha(fact: Factorization, z):
    """Closed form adj D(1/z) s3 adj D^T(z) / (16 eta1^2 eta2^2 tau (1/z - tau) sqrt f(z) sqrt f(1/z))."""
    z = np.asarray(z, dtype=complex)
    P = fact.params
    zi = 1 / z
    num = adj(fact.D(zi)) @ SIGMA3 @ adj(T(fact.D(z)))
    den = 16 * P.eta1**2 * P.eta2**2 * P.tau * (zi - P.tau) * fact.sqrt_f(z) * fact.sqrt_f(zi)
    return num / den[..., None, None]


def beta(fact: Factorization, z):
    """Closed form tau/(1/z - tau) D^T(z) s3 D(1/z) / (sqrt f(z) sqrt f(1/z))."""
    z = np.asarray(z, dtype=complex)
    P = fact.params
    zi = 1 / z
    num = T(fact.D(z)) @ SIGMA3 @ fact.D(zi)
    den = (zi - P.tau) / P.tau * fact.sqrt_f(z) * fact.sqrt_f(zi)
    return num / den[..., None, None]


def alpha_from_factors(fact: Factorization, z):
    return fact.phi_minus(z) @ fact.theta_plus_inv(z)


def beta_from_factors(fact: Factorization, z):
    zi = 1 / np.asarray(z, dtype=complex)
    return fact.theta_minus_inv(zi) @ fact.phi_plus(zi)


@dataclass(frozen=True)
class AlphaBeta:
    fact: Factorization
    alpha_coeffs: BlockFourierSeries
    beta_coeffs: BlockFourierSeries
    radius: float

    @property
    def kmax(self) -> int:
        return self.alpha_coeffs.K

    def alpha(self, z):
        return alpha(self.fact, z)

    def beta(self, z):
        return beta(self.fact, z)


def contour_radius(params: Parameters, delta: float = DELTA) -> float:
    return min(abs(params.eta1), abs(params.eta2)) * (1 - delta)


def _coeffs_on(fact: Factorization, radius: float, kmax: int):
    a = auto_fourier(lambda z: alpha(fact, z), radius, K=kmax)
    b = auto_fourier(lambda z: beta(fact, z), radius, K=kmax)
    return a, b


def alpha_beta_coeffs(fact: Factorization, kmax: int, delta: float = DELTA,
                      check: bool = True, tol: float = 1e-9) -> AlphaBeta:
    """Coefficients alpha_k, beta_k for |k| <= kmax from the circle of radius (1-delta) min|eta|.

    With ``check`` the first 30 coefficients are recomputed on radius 0.90
    min|eta| and on the unit circle and must agree to ``tol`` relative to the
    largest coefficient in that window (on the unit circle a coefficient of
    size |eta|^-k carries an absolute rounding error near 1e-16).
    """
    rho = contour_radius(fact.params, delta)
    a, b = _coeffs_on(fact, rho, kmax)
    if check:
        kc = np.arange(1, min(30, kmax) + 1)
        ref = np.abs(a.block(kc)).max()
        refb = np.abs(b.block(kc)).max()
        for r in (contour_radius(fact.params, 0.10), 1.0):
            a2, b2 = _coeffs_on(fact, r, int(kc[-1]))
            err = max(np.abs((a2.block(kc) - a.block(kc)) / ref).max(),
                      np.abs((b2.block(kc) - b.block(kc)) / refb).max())
            if err > tol:
                raise AliasError(f"alpha/beta coefficients differ by {err:.2e} between radii {rho:.4f} and {r:.4f}")
    return AlphaBeta(fact=fact, alpha_coeffs=a, beta_coeffs=b, radius=rho)


def truncation_size(params: Parameters, n: int, eps: float = EPS_TRUNC) -> int:
    """K = ceil((ln(1/eps) + 2 n s) / (2 s))."""
    s = params.s
    return int(np.ceil((np.log(1 / eps) + 2 * n * s) / (2 * s)))


@dataclass(frozen=True)
class LambdaOperator:
    n: int
    K: int
    matrix: np.ndarray  # (2K, 2K)
    trace_series: complex

    def det(self) -> complex:
        """det(I - Lambda) by pivoted LU."""
        lu, piv = scipy.linalg.lu_factor(np.eye(2 * self.K) - self.matrix)
        d = np.prod(np.diag(lu))
        swaps = np.count_nonzero(piv != np.arange(len(piv)))
        return complex(d * (-1) ** swaps)

    def logdet(self) -> complex:
        """log det(I - Lambda) summed as log1p over the eigenvalues of Lambda.

        The LU determinant is 1 - O(e^{-2ns}) and loses all digits of the
        deviation once it drops below 1e-16; this form keeps them.
        """
        lam = np.linalg.eigvals(self.matrix)
        return complex(np.sum(log1p_complex(-lam)))

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def norm1(self) -> float:
        return float(np.abs(self.matrix).sum())


def log1p_complex(w):
    """log(1 + w) accurate for tiny complex w (numpy's complex log1p is not)."""
    w = np.asarray(w, dtype=complex)
    x, y = w.real, w.imag
    return 0.5 * np.log1p(2 * x + x * x + y * y) + 1j * np.arctan2(y, 1 + x)


def hankel_block(coeffs: BlockFourierSeries, n: int, K: int) -> np.ndarray:
    """(2K x 2K) matrix with block (j, a) = c_{j+n+a+1}."""
    idx = np.arange(K)[:, None] + np.arange(K)[None, :] + n + 1
    blocks = coeffs.block(idx)  # (K, K, 2, 2)
    return blocks.transpose(0, 2, 1, 3).reshape(2 * K, 2 * K)


def build_lambda(ab: AlphaBeta, n: int, K: int | None = None, check: bool = True) -> LambdaOperator:
    """Lambda = H(z^-n alpha) H(z^-n beta), truncated to K x K blocks."""
    if K is None:
        K = truncation_size(ab.fact.params, n)
    if ab.kmax < n + 2 * K - 1:
        raise ValueError(f"need coefficients up to {n + 2 * K - 1}, have {ab.kmax}")
    Ha = hankel_block(ab.alpha_coeffs, n, K)
    Hb = hankel_block(ab.beta_coeffs, n, K)
    L = Ha @ Hb
    ks = np.arange(1, K + 1)
    terms = ks * np.trace(ab.alpha_coeffs.block(ks + n) @ ab.beta_coeffs.block(ks + n), axis1=1, axis2=2)
    series = complex(terms.sum())
    if check:
        if abs(terms[-1]) > 1e-14 * abs(series) and abs(terms[-1]) > 1e-300:
            raise TruncationError(f"last trace term {abs(terms[-1]):.2e} vs trace {abs(series):.2e}")
        tr = np.trace(L)
        if abs(tr - series) > 1e-12 * abs(series) + 1e-300:
            raise ToleranceError(f"trace of Lambda {tr} disagrees with the series {series}")
    return LambdaOperator(n=n, K=K, matrix=L, trace_series=series)


@lru_cache(maxsize=64)
def _cached_alpha_beta(t: float, kmax: int) -> AlphaBeta:
    params = compute_parameters(t)
    fact = build_factorization(params)
    return alpha_beta_coeffs(fact, kmax)


def lambda_operator(t: float, n: int) -> LambdaOperator:
    params = compute_parameters(t)
    K = truncation_size(params, n)
    kmax = n + 2 * K
    # round up so neighbouring n share one coefficient table
    kmax = int(2 ** np.ceil(np.log2(kmax)))
    return build_lambda(_cached_alpha_beta(float(t), kmax), n, K)


def fredholm_det(t: float, n: int) -> float:
    """det(I - Lambda) by LU; real up to rounding."""
    d = lambda_operator(t, n).det()
    if abs(d.imag) > 1e-9 * abs(d.real):
        raise ToleranceError(f"det(I - Lambda) = {d} is not real")
    return float(d.real)


def fredholm_logdet(t: float, n: int) -> float:
    ld = lambda_operator(t, n).logdet()
    return float(ld.real)


def fredholm_k2(t: float, n: int) -> float:
    """K2(inf) sqrt(det(I - Lambda))."""
    return k2_infinity(t) * np.sqrt(fredholm_det(t, n))


def k2_deficit(t: float, n: int) -> float:
    """1 - K2(n)/K2(inf), evaluated without cancellation."""
    return float(-np.expm1(0.5 * fredholm_logdet(t, n)))


__all__ = [
    "AlphaBeta", "LambdaOperator", "alpha", "alpha_beta_coeffs", "alpha_from_factors", "beta",
    "beta_from_factors", "build_lambda", "contour_radius", "fredholm_det", "fredholm_k2",
    "fredholm_logdet", "hankel_block", "k2_deficit", "log1p_complex", "k2_infinity", "lambda_operator",
    "order_parameter_E", "truncation_size",
]
