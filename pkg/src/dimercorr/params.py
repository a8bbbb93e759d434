"""Scalar parameters of the triangular-lattice dimer model.

Everything downstream is expressed through ``tau = 1/t`` and the two roots
``eta_1``, ``eta_2`` (``|eta_j| > 1``) of the quartic that factorizes
``t**2 + sin(x)**2 + sin(x)**4``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CriticalPointError, DomainError, SingularSymbolError

EPS_CRIT = 1e-6


class Regime(enum.Enum):
    SUBCRITICAL = "subcritical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class Parameters:
    t: float
    tau: float
    mu: complex
    xi1: complex
    xi2: complex
    eta1: complex
    eta2: complex
    regime: Regime

    @property
    def s(self) -> float:
        """Decay exponent: ln eta_2 (subcritical) or ln|eta_1| (supercritical)."""
        return float(np.log(min(abs(self.eta1), abs(self.eta2))))

    @property
    def theta(self) -> float:
        """|arg eta_1|; zero in the subcritical regime."""
        return float(abs(np.angle(self.eta1)))

    @property
    def correlation_length(self) -> float:
        return 1.0 / (2.0 * self.s)

    def eta_residual(self) -> float:
        """Residual of (eta1^2 - 1)(eta2^2 - 1) = 4 eta1 eta2 / tau."""
        e1, e2 = self.eta1, self.eta2
        return float(abs((e1**2 - 1) * (e2**2 - 1) - 4 * e1 * e2 / self.tau))

    def swapped(self) -> "Parameters":
        """Same model with the labels of eta_1 and eta_2 exchanged."""
        return Parameters(self.t, self.tau, self.mu, self.xi2, self.xi1,
                          self.eta2, self.eta1, self.regime)


def mu_of(t: float) -> complex:
    """mu = sqrt(1 - 4 t^2), principal branch (imaginary for t > 1/2)."""
    return complex(np.sqrt(complex(1 - 4 * t * t)))


def _candidate_roots(t: float, mu: complex):
    # every sign pairing of "+-mu" and every branch of the inner root
    for s1, b1, b2 in itertools.product((1, -1), repeat=3):
        xi1 = 2 + s1 * mu - 2 * b1 * np.sqrt(1 - t * t + s1 * mu)
        xi2 = 2 - s1 * mu - 2 * b2 * np.sqrt(1 - t * t - s1 * mu)
        yield complex(xi1), complex(xi2)


def compute_parameters(t: float, eps_crit: float = EPS_CRIT, *, limit: bool = False) -> Parameters:
    """Derive tau, mu, xi_j, eta_j and the regime from the diagonal weight ``t``.

    ``limit=True`` allows ``t = 1`` exactly; the symbol is singular there but
    the asymptotic constants are algebraic in (eta_1, eta_2, tau), so they can
    still be evaluated as limiting values.
    """
    t = float(t)
    if not (0 < t < 1 or (limit and t == 1)):
        raise DomainError(f"t must lie in (0, 1), got {t}")
    if abs(t - 0.5) <= eps_crit:
        raise CriticalPointError(f"t={t} is within {eps_crit} of the critical point 1/2")
    if not limit and t >= 1 - eps_crit:
        raise SingularSymbolError(f"t={t} is within {eps_crit} of the singular point t=1")

    tau = 1.0 / t
    mu = mu_of(t)
    best = None
    for xi1, xi2 in _candidate_roots(t, mu):
        if not (0 < abs(xi1) < 1 and 0 < abs(xi2) < 1):
            continue
        e1, e2 = 1 / np.sqrt(xi1), 1 / np.sqrt(xi2)
        res = abs((e1**2 - 1) * (e2**2 - 1) - 4 * e1 * e2 / tau)
        if best is None or res < best[0]:
            best = (res, xi1, xi2)
    if best is None:  # pragma: no cover - excluded by the domain checks
        raise DomainError(f"no admissible root pair for t={t}")
    _, xi1, xi2 = best

    if t < 0.5:
        regime = Regime.SUBCRITICAL
        xi1, xi2 = complex(xi1.real, 0.0), complex(xi2.real, 0.0)
        if xi1.real > xi2.real:  # eta1 > eta2
            xi1, xi2 = xi2, xi1
    else:
        regime = Regime.SUPERCRITICAL
        e1 = 1 / np.sqrt(xi1)
        if e1.imag > 0:  # eta1 = exp(s - i theta)
            xi1, xi2 = xi2, xi1
    eta1 = complex(1 / np.sqrt(xi1))
    eta2 = complex(1 / np.sqrt(xi2))
    if regime is Regime.SUPERCRITICAL:
        # enforce exact conjugacy; the two roots agree to rounding anyway
        eta2 = eta1.conjugate()
        xi2 = xi1.conjugate()
    return Parameters(t=t, tau=tau, mu=mu, xi1=xi1, xi2=xi2,
                      eta1=eta1, eta2=eta2, regime=regime)


def sweep_grid(step: float = 0.01) -> np.ndarray:
    """t grid {step, 2 step, ...} excluding the critical neighbourhood of 1/2."""
    ts = np.round(np.arange(step, 1.0, step), 12)
    return ts[np.abs(ts - 0.5) > step / 2]
