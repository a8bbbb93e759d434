"""Finite block Toeplitz matrices T_n(phi) and the exact correlation K_2."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .errors import NonPositiveDeterminantError
from .quadrature import BlockFourierSeries, auto_fourier
from .symbol import phi_on_circle


@dataclass(frozen=True)
class BlockToeplitz:
    n: int
    blocks: BlockFourierSeries

    @property
    def realized(self) -> np.ndarray:
        n = self.n
        j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        b = self.blocks.block(j - k)  # (n, n, 2, 2)
        return b.transpose(0, 2, 1, 3).reshape(2 * n, 2 * n)


def block_toeplitz(coeffs: BlockFourierSeries, n: int) -> BlockToeplitz:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n - 1 > coeffs.K:
        raise IndexError(f"need coefficients up to {n - 1}, have {coeffs.K}")
    return BlockToeplitz(n=n, blocks=coeffs)


def logdet_lu(a: np.ndarray) -> tuple[float, complex]:
    """(log|det a|, phase) from a partially pivoted LU; log = -inf if singular."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    d = np.diag(lu)
    if np.any(d == 0):
        return -np.inf, 1.0 + 0j
    swaps = int(np.sum(piv != np.arange(len(piv))))
    phase = (-1) ** swaps * np.prod(d / np.abs(d))
    return float(np.sum(np.log(np.abs(d)))), complex(phase)


def det_block_toeplitz(T: BlockToeplitz | np.ndarray) -> complex:
    m = T.realized if isinstance(T, BlockToeplitz) else np.asarray(T)
    logabs, phase = logdet_lu(m)
    if logabs == -np.inf:
        return 0j
    return phase * np.exp(logabs)


@lru_cache(maxsize=64)
def phi_coefficients(t: float) -> BlockFourierSeries:
    """Unit-circle Fourier coefficients of phi, grid chosen by the alias test."""
    return auto_fourier(phi_on_circle(t), radius=1.0)


def toeplitz_det(t: float, n: int) -> float:
    T = block_toeplitz(phi_coefficients(float(t)), n)
    d = det_block_toeplitz(T)
    if d.real <= 0 or abs(d.imag) > 1e-9 * abs(d.real):
        raise NonPositiveDeterminantError(f"det T_{n}(phi) = {d} at t={t}")
    return float(d.real)


def toeplitz_k2(t: float, n: int) -> float:
    """K_2 = sqrt(det T_n(phi)) / 2."""
    return 0.5 * float(np.sqrt(toeplitz_det(t, n)))
