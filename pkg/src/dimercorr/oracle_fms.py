"""Ground-truth route: the (2n) x (2n) determinant built from R_k and Q_k."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DomainError, NegativeDeterminantError
from .quadrature import rq_table


def step(k: int) -> int:
    """theta(k): 1 for k > 0, else 0."""
    return 1 if k > 0 else 0


def floor_sign(m: int) -> int:
    """(-1)^floor(m/2) with Python's floor division (floors toward -inf)."""
    return -1 if (m // 2) % 2 else 1


@dataclass(frozen=True)
class FmsMatrices:
    n: int
    R_block: np.ndarray  # real n x n
    Q_block: np.ndarray  # purely imaginary n x n

    @property
    def full(self) -> np.ndarray:
        return np.block([[self.R_block, self.Q_block], [self.Q_block, self.R_block]])


def needed_indices(n: int, origin: int = 1) -> tuple[set[int], set[int]]:
    idx = range(origin, origin + n)
    r_idx = {k - j + 1 for j in idx for k in idx}
    q_idx = {n + 1 - k - j for j in idx for k in idx}
    return r_idx, q_idx


def fms_matrices(t: float, n: int, origin: int = 1, M: int | None = None) -> FmsMatrices:
    """Assemble the R and Q blocks; ``origin`` is the first row/column index."""
    if not 0 < t < 1:
        raise DomainError(f"t must lie in (0, 1), got {t}")
    r_idx, q_idx = needed_indices(n, origin)
    table = rq_table(t, r_idx | q_idx, M=M)
    R = np.zeros((n, n))
    Q = np.zeros((n, n), dtype=complex)
    for a in range(n):
        j = a + origin
        for b in range(n):
            k = b + origin
            R[a, b] = 2 * floor_sign(k - j) * table[k - j + 1][0] + step(j - k) * t ** (j - k - 1)
            Q[a, b] = 2j * floor_sign(j + k) * table[n + 1 - k - j][1]
    return FmsMatrices(n=n, R_block=R, Q_block=Q)


def fms_determinant(mats: FmsMatrices, via_blocks: bool = False) -> complex:
    if via_blocks:
        # repeated-block shape: det [[R, Q], [Q, R]] = det(R + Q) det(R - Q)
        return complex(np.linalg.det(mats.R_block + mats.Q_block)
                       * np.linalg.det(mats.R_block - mats.Q_block))
    lu, piv = scipy.linalg.lu_factor(mats.full)
    sign = (-1) ** int(np.sum(piv != np.arange(len(piv))))
    return complex(sign * np.prod(np.diag(lu)))


def fms_k2(t: float, n: int, origin: int = 1, M: int | None = None) -> float:
    """K_2 at separation n from the FMS determinant (oracle scale, n <= 16)."""
    if not 1 <= n <= 16:
        raise ValueError(f"oracle supports 1 <= n <= 16, got {n}")
    d = fms_determinant(fms_matrices(t, n, origin=origin, M=M))
    if d.real < -1e-9:
        raise NegativeDeterminantError(f"FMS determinant {d} is negative")
    if abs(d.imag) > 1e-9 * max(abs(d.real), 1e-300):
        raise NegativeDeterminantError(f"FMS determinant {d} is not real")
    return 0.5 * float(np.sqrt(max(d.real, 0.0)))
