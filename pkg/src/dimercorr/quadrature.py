"""Fourier coefficients of periodic matrix functions and the 2-D lattice integrals.

Both are trapezoid rules on uniform grids; the integrands are analytic in a
strip, so the rules converge geometrically and grid doubling is a reliable
error estimate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from .errors import AliasError, ConvergenceError
from .symbol import MatrixFunction2, sample

TAIL_TOL = 1e-13
N_START = 256
N_MAX_1D = 2**15
M_MAX_2D = 2**12


@dataclass(frozen=True)
class BlockFourierSeries:
    """Laurent coefficients c_k (2x2) for k in [-K, K]."""

    coeffs: np.ndarray  # shape (2K+1, 2, 2); coeffs[k + K] is c_k
    source_radius: float = 1.0

    @property
    def K(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    def __getitem__(self, k: int) -> np.ndarray:
        if abs(k) > self.K:
            raise IndexError(f"coefficient {k} outside window [-{self.K}, {self.K}]")
        return self.coeffs[k + self.K]

    def block(self, ks) -> np.ndarray:
        """Fancy-indexed coefficients for an integer array ``ks``."""
        ks = np.asarray(ks)
        if ks.size and np.abs(ks).max() > self.K:
            raise IndexError(f"coefficients requested beyond |k| <= {self.K}")
        return self.coeffs[ks + self.K]

    def resum(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        ks = np.arange(-self.K, self.K + 1)
        powers = z[..., None] ** ks
        return np.einsum("...k,kij->...ij", powers, self.coeffs)


def fourier_block(f: MatrixFunction2, K: int | None = None, tail_tol: float = TAIL_TOL,
                  check: bool = True) -> BlockFourierSeries:
    """Laurent coefficients of the analytic function sampled in ``f``.

    The discrete transform of samples on radius r gives c_k r^k (up to
    aliasing); dividing by r^k returns the true coefficients.  Aliasing is
    judged on the raw transform: the entries near the Nyquist index must be
    below ``tail_tol`` times the largest entry.
    """
    N = f.N
    if K is None:
        K = N // 2 - 1
    if N < 2 * K + 2:
        raise ValueError(f"N={N} too small for K={K}; need N >= 2K+2")
    F = np.fft.fft(f.samples, axis=0) / N
    if check:
        scale = np.abs(F).max()
        tail = np.abs(F[N // 2 - 2: N // 2 + 3]).max()
        if scale > 0 and tail > tail_tol * scale:
            raise AliasError(f"Fourier tail {tail / scale:.2e} exceeds {tail_tol:.0e} on N={N}")
    ks = np.arange(-K, K + 1)
    raw = F[ks % N]
    with np.errstate(over="ignore"):
        scale_k = float(f.radius) ** (-ks.astype(float))
    return BlockFourierSeries(coeffs=raw * scale_k[:, None, None], source_radius=f.radius)


def auto_fourier(evaluator: Callable[[np.ndarray], np.ndarray], radius: float = 1.0,
                 K: int | None = None, N0: int = N_START, N_max: int = N_MAX_1D,
                 tail_tol: float = TAIL_TOL) -> BlockFourierSeries:
    """Double the grid from ``N0`` until the alias test passes."""
    N = N0
    while K is not None and N < 2 * K + 2:
        N *= 2
    while True:
        try:
            return fourier_block(sample(evaluator, radius, N), K=K, tail_tol=tail_tol)
        except AliasError:
            if N >= N_max:
                raise
            N *= 2


# -- 2-D lattice integrals ------------------------------------------------------

@lru_cache(maxsize=32)
def _rq_spectra(t: float, M: int):
    """Discrete sums for all k at once, via 2-D FFTs of the weighted integrands.

    Returns three length-M complex arrays indexed by k mod M:
      A[k] = sum W cos y e^{i(kx+y)},  B[k] = sum W cos x e^{ikx},
      C[k] = sum W cos(x+y) e^{i(kx+y)},
    with W = 1 / (cos^2 x + cos^2 y + t^2 cos^2(x+y)).
    """
    x = 2 * np.pi * np.arange(M) / M
    X, Y = np.meshgrid(x, x, indexing="ij")
    cx, cy, cxy = np.cos(X), np.cos(Y), np.cos(X + Y)
    W = 1.0 / (cx * cx + cy * cy + t * t * cxy * cxy)
    # fft2 sums with e^{-i(a x + b y)}; we need frequency (-k, -1) in (x, y)
    A = np.fft.fft2(W * cy)[(-np.arange(M)) % M, (-1) % M]
    C = np.fft.fft2(W * cxy)[(-np.arange(M)) % M, (-1) % M]
    B = np.fft.fft((W * cx).sum(axis=1))[(-np.arange(M)) % M]
    return A, B, C


def _rq_at(t: float, ks: np.ndarray, M: int):
    A, B, C = _rq_spectra(float(t), int(M))
    idx = ks % M
    norm = 1.0 / (2.0 * M * M)  # (1/8 pi^2)(2 pi / M)^2
    odd = (ks % 2) != 0
    R = np.where(odd, t * norm * C[idx], norm * A[idx])
    Q = np.where(odd, norm * B[idx], 0.0)
    return R, Q


def rq_table(t: float, ks: Iterable[int], M: int | None = None, tol: float = 1e-10,
             M_max: int = M_MAX_2D) -> dict[int, tuple[float, float]]:
    """R_k and Q_k for every k in ``ks``; Q_k = 0 exactly for even k.

    With ``M=None`` the grid doubles from 256 until successive results agree
    to ``tol``.
    """
    ks = np.array(sorted(set(int(k) for k in ks)), dtype=int)
    if M is not None:
        R, Q = _rq_at(t, ks, M)
    else:
        M = N_START
        R, Q = _rq_at(t, ks, M)
        while True:
            R2, Q2 = _rq_at(t, ks, 2 * M)
            diff = max(np.abs(R2 - R).max(initial=0), np.abs(Q2 - Q).max(initial=0))
            R, Q, M = R2, Q2, 2 * M
            if diff <= tol:
                break
            if M >= M_max:
                raise ConvergenceError(f"R_k/Q_k not converged at M={M} (change {diff:.2e})")
    imag = max(np.abs(np.imag(R)).max(initial=0), np.abs(np.imag(Q)).max(initial=0))
    if imag > 1e-12:
        raise ConvergenceError(f"R_k/Q_k carry an imaginary part {imag:.2e}")
    out = {}
    for k, r, q in zip(ks, np.real(R), np.real(Q)):
        out[int(k)] = (float(r), 0.0 if k % 2 == 0 else float(q))
    return out


def rq_integrals(t: float, k: int, M: int | None = None) -> tuple[float, float]:
    """(R_k, Q_k) for a single index."""
    return rq_table(t, [k], M=M)[int(k)]
