"""Monomer-monomer correlation of the triangular-lattice dimer model.

K2 at separation n is computed three ways (FMS determinant, block Toeplitz
determinant, Fredholm determinant of a Hankel product built from an explicit
Wiener-Hopf factorization) and compared with its closed-form large-n
asymptotics.
"""

from .asymptotics import (AsymptoticConstants, constants, constants_sub, constants_super,
                          k2_asymptotic, limit_constants)
from .errors import (AliasError, BranchError, ConvergenceError, CriticalPointError, DimerError,
                     DivisionByZeroError, DomainError, NegativeDeterminantError,
                     NonPositiveDeterminantError, SingularSymbolError, ToleranceError,
                     TruncationError)
from .kernel import fredholm_det, fredholm_k2, k2_infinity, order_parameter_E
from .oracle_fms import fms_k2
from .params import Parameters, Regime, compute_parameters
from .toeplitz import toeplitz_det, toeplitz_k2
from .wienerhopf import build_factorization, stepwise_factorize_rho, verify_constant_C

__version__ = "0.1.0"

__all__ = [
    "AliasError", "AsymptoticConstants", "BranchError", "ConvergenceError", "CriticalPointError",
    "DimerError", "DivisionByZeroError", "DomainError", "NegativeDeterminantError",
    "NonPositiveDeterminantError", "Parameters", "Regime", "SingularSymbolError", "ToleranceError",
    "TruncationError", "build_factorization", "compute_parameters", "constants", "constants_sub",
    "constants_super", "fms_k2", "fredholm_det", "fredholm_k2", "k2_asymptotic", "k2_infinity",
    "limit_constants", "order_parameter_E", "stepwise_factorize_rho", "toeplitz_det", "toeplitz_k2",
    "verify_constant_C",
]
