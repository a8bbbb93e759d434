"""Explicit Wiener-Hopf factorization phi = phi_plus phi_minus = theta_minus theta_plus.

The closed-form route multiplies the elementary factors

    D(z) = D0 P1 D1 P2 D2 P3 D3 P4 D4 P5,    Psi(z) = D(z) / sqrt f(z),

with ``phi_plus = A Psi`` and ``phi_minus(z) = Psi^{-1}(1/z)``.  The
stepwise route re-derives P1..P4 with the decreasing power algorithm,
working on Laurent coefficient vectors of the entries of rho(z).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from ._linalg import SIGMA3, T, adj, det2, diag2, inv2, mat2
from .errors import BranchError, DivisionByZeroError, ToleranceError
from .params import Parameters
from .symbol import f_scalar, g_scalar, grid_points, phi_z, pi_matrix, sqrt_f


def elementary_p(params: Parameters) -> tuple[complex, complex, complex, complex, complex]:
    """Closed forms of the off-diagonal entries p1..p5 of P1..P5."""
    e1, e2, tau = params.eta1, params.eta2, params.tau
    p1 = 1j * (tau * (e1**2 - 1) ** 2 - 2 * e1 * (e1**2 + 1)) / (2 * (e1**2 - 1))
    p2 = -1j * (e1**2 + 1) / (e1**2 - 1)
    p3 = 1j * tau * (e1 + 1) / (2 * e1)
    p4 = -2j * e1 * e2 / tau
    p5 = -1j * tau / (2 * e1)
    return complex(p1), complex(p2), complex(p3), complex(p4), complex(p5)


def upper(p) -> np.ndarray:
    return np.array([[1, p], [0, 1]], dtype=complex)


def lower(p) -> np.ndarray:
    return np.array([[1, 0], [p, 1]], dtype=complex)


@dataclass(frozen=True)
class ElementaryFactors:
    params: Parameters
    p: tuple  # (p1, ..., p5)

    @property
    def P(self) -> tuple[np.ndarray, ...]:
        p1, p2, p3, p4, p5 = self.p
        return upper(p1), upper(p2), upper(p3), lower(p4), upper(p5)

    def D_factors(self, z):
        """D0(z) .. D4(z) as batched diagonal matrices."""
        z = np.asarray(z, dtype=complex)
        e1, e2, tau = self.params.eta1, self.params.eta2, self.params.tau
        one = np.ones_like(z)
        return (diag2(one, z - tau), diag2(z - e1, one), diag2(z + e1, one),
                diag2(z - e2, one), diag2(one, z + e2))


def elementary_factors(params: Parameters) -> ElementaryFactors:
    return ElementaryFactors(params=params, p=elementary_p(params))


def v_plus(params: Parameters, z, p=None):
    """D0 P1 D1 P2 D2 P3 D3 P4 D4 (no P5); polynomial, invertible on |z| <= 1."""
    ef = elementary_factors(params) if p is None else ElementaryFactors(params, tuple(p))
    D0, D1, D2, D3, D4 = ef.D_factors(z)
    P1, P2, P3, P4, _ = ef.P
    return D0 @ P1 @ D1 @ P2 @ D2 @ P3 @ D3 @ P4 @ D4


def D_matrix(params: Parameters, z, P5: np.ndarray | None = None):
    """D(z) = v_plus(z) P5."""
    if P5 is None:
        P5 = upper(elementary_p(params)[4])
    return v_plus(params, z) @ P5


def D_closed_form(params: Parameters, z):
    """Entries of D(z) written out as cubic/quadratic polynomials."""
    z = np.asarray(z, dtype=complex)
    e1, e2, tau = params.eta1, params.eta2, params.tau
    h = e1 * e2
    d11 = z**3 + h * z**2 - (e1**2 + e2**2 - 1 + 2 * h / tau) * z - h
    d12 = 1j * tau * z**3 / 2 + 1j * (-1 + tau / (2 * h)) * z**2 - 1j * tau * z / 2 - 1j * tau * h / 2
    d21 = -2j * h * z / tau + 2j * h
    d22 = z**2 - tau * z
    return mat2(d11, d12, d21, d22)


def det_D_expected(params: Parameters, z):
    z = np.asarray(z, dtype=complex)
    return (z - params.tau) * (z**2 - params.eta1**2) * (z**2 - params.eta2**2)


@dataclass(frozen=True)
class Factorization:
    """Evaluators for all Wiener-Hopf factors; immutable and thread-safe."""

    params: Parameters
    P5: np.ndarray = field(repr=False)

    def A(self, z):
        z = np.asarray(z, dtype=complex)
        return self.params.tau / (z - self.params.tau)

    def f(self, z):
        return f_scalar(self.params, z)

    def sqrt_f(self, z):
        return sqrt_f(self.params, z)

    def D(self, z):
        return D_matrix(self.params, z, self.P5)

    def Psi(self, z):
        return self.D(z) / self.sqrt_f(z)[..., None, None]

    def Psi_inv(self, z):
        # adjugate over the closed-form det Psi = 4 eta1 eta2 (z - tau) det P5
        z = np.asarray(z, dtype=complex)
        detP5 = np.linalg.det(self.P5)
        det_psi = 4 * self.params.eta1 * self.params.eta2 * (z - self.params.tau) * detP5
        return adj(self.Psi(z)) / det_psi[..., None, None]

    def phi_plus(self, z):
        return self.A(z)[..., None, None] * self.Psi(z)

    def phi_plus_inv(self, z):
        return self.Psi_inv(z) / self.A(z)[..., None, None]

    def phi_minus(self, z):
        return self.Psi_inv(1 / np.asarray(z, dtype=complex))

    def phi_minus_inv(self, z):
        return self.Psi(1 / np.asarray(z, dtype=complex))

    def theta_plus(self, z):
        return T(self.phi_plus(z)) @ SIGMA3

    def theta_minus(self, z):
        return SIGMA3 @ T(self.phi_minus(z))

    def theta_plus_inv(self, z):
        return SIGMA3 @ T(self.phi_plus_inv(z))

    def theta_minus_inv(self, z):
        return T(self.phi_minus_inv(z)) @ SIGMA3


def check_branch_continuity(params: Parameters, radius: float = 1.0, N: int = 512) -> float:
    """Largest step of sqrt f along the circle relative to the allowed bound."""
    z = grid_points(radius, N)
    vals = sqrt_f(params, z)
    jumps = np.abs(np.diff(np.append(vals, vals[0])))
    # derivative estimate from a finer grid
    zf = grid_points(radius, 4 * N)
    vf = sqrt_f(params, zf)
    slope = np.abs(np.diff(np.append(vf, vf[0]))).max() / (2 * np.pi / (4 * N))
    bound = 10 * (2 * np.pi / N) * slope
    ratio = float(jumps.max() / bound)
    if ratio >= 1:
        raise BranchError(f"sqrt f jumps by {jumps.max():.3e} on radius {radius}")
    return ratio


def factorization_residuals(fact: Factorization, N: int = 512) -> dict[str, float]:
    """Max entrywise residuals of both factorizations on the unit circle."""
    z = grid_points(1.0, N)
    phi = phi_z(fact.params, z)
    return {
        "plus_minus": float(np.abs(phi - fact.phi_plus(z) @ fact.phi_minus(z)).max()),
        "minus_plus": float(np.abs(phi - fact.theta_minus(z) @ fact.theta_plus(z)).max()),
    }


def build_factorization(params: Parameters, P5: np.ndarray | None = None, N: int = 512,
                        tol: float = 1e-10, check: bool = True) -> Factorization:
    """Closed-form factorization of phi; verified on an N-point grid unless ``check=False``."""
    if P5 is None:
        P5 = upper(elementary_p(params)[4])
    fact = Factorization(params=params, P5=np.asarray(P5, dtype=complex))
    if check:
        for r in (0.5, 1.0):
            check_branch_continuity(params, r, N)
        res = factorization_residuals(fact, N)
        if max(res.values()) >= tol:
            raise ToleranceError(f"factorization residual {res} exceeds {tol}")
        for r in np.linspace(0.1, 1.0, 10):
            z = grid_points(r, 64)
            if not (np.all(np.isfinite(fact.phi_plus(z))) and np.all(np.isfinite(fact.phi_plus_inv(z)))):
                raise ToleranceError(f"phi_plus not finite/invertible on radius {r}")
        for r in np.linspace(1.0, 3.0, 9):
            z = grid_points(r, 64)
            if not (np.all(np.isfinite(fact.phi_minus(z))) and np.all(np.isfinite(fact.phi_minus_inv(z)))):
                raise ToleranceError(f"phi_minus not finite/invertible on radius {r}")
    return fact


# -- decreasing power algorithm ---------------------------------------------------

@dataclass(frozen=True)
class Laurent:
    """sum_k c[k] z^(lo + k)."""

    c: np.ndarray
    lo: int = 0

    @classmethod
    def monomial(cls, coef, power: int) -> "Laurent":
        return cls(np.array([coef], dtype=complex), power)

    @property
    def hi(self) -> int:
        return self.lo + len(self.c) - 1

    def _aligned(self, other: "Laurent"):
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        a = np.zeros(hi - lo + 1, dtype=complex)
        b = np.zeros_like(a)
        a[self.lo - lo: self.lo - lo + len(self.c)] = self.c
        b[other.lo - lo: other.lo - lo + len(other.c)] = other.c
        return a, b, lo

    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.monomial(other, 0)
        a, b, lo = self._aligned(other)
        return Laurent(a + b, lo).trim()

    __radd__ = __add__

    def __neg__(self):
        return Laurent(-self.c, self.lo)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Laurent) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Laurent):
            return Laurent(np.convolve(self.c, other.c), self.lo + other.lo).trim()
        return Laurent(self.c * other, self.lo)

    __rmul__ = __mul__

    def trim(self, tol: float = 0.0) -> "Laurent":
        c, lo = self.c, self.lo
        nz = np.nonzero(np.abs(c) > tol)[0]
        if len(nz) == 0:
            return Laurent(np.zeros(1, dtype=complex), 0)
        return Laurent(c[nz[0]: nz[-1] + 1].copy(), lo + int(nz[0]))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return npoly.polyval(z, self.c) * z ** self.lo

    def coef(self, power: int) -> complex:
        k = power - self.lo
        return complex(self.c[k]) if 0 <= k < len(self.c) else 0j

    def divide_linear(self, root: complex) -> tuple["Laurent", complex]:
        """(self / (z - root), remainder); the remainder is the value at root times root^-lo."""
        q, r = npoly.polydiv(self.c, np.array([-root, 1.0], dtype=complex))
        return Laurent(np.asarray(q, dtype=complex), self.lo), complex(np.atleast_1d(r)[0])


Z = Laurent.monomial(1.0, 1)
ZI = Laurent.monomial(1.0, -1)
COS = 0.5 * (Z + ZI)
SIN = (Z - ZI) * (1 / 2j)


def rho_entries(tau: float) -> list[list[Laurent]]:
    """Laurent entries of rho(z) built from cos x and sin x as Laurent polynomials."""
    w = COS + tau * SIN * SIN  # cos x + tau sin^2 x
    zt = Z - tau
    zit = ZI - tau
    return [[Z * w, SIN * zt * zit], [-SIN, ZI * w]]


@dataclass
class StepwiseResult:
    params: Parameters
    p: tuple  # recovered (p1, p2, p3, p4)
    rho: list  # rho after each step: [rho, rho1, rho2, rho3, rho4]
    remainders: list  # division remainders (should vanish)

    @property
    def rho4(self) -> list[list[Laurent]]:
        return self.rho[-1]

    def rho4_at(self, z):
        r = self.rho4
        return mat2(r[0][0](z), r[0][1](z), r[1][0](z), r[1][1](z))

    def rho4_at_infinity(self) -> np.ndarray:
        """Constant term of rho4 (it is O(1) at infinity)."""
        r = self.rho4
        return np.array([[r[i][j].coef(0) for j in range(2)] for i in range(2)])

    def v_minus(self, z):
        z = np.asarray(z, dtype=complex)
        return self.rho4_at(z) @ diag2(1 / z - self.params.tau, np.ones_like(z)) / self.params.tau**2

    def v_minus_at_infinity(self) -> np.ndarray:
        return self.rho4_at_infinity() @ np.diag([-self.params.tau, 1.0]) / self.params.tau**2


def _peel_upper(rho, root):
    """rho = P(p) diag(z - root, 1) rho'; zeroes row 1 at ``root``."""
    den = rho[1][0](root)
    if abs(den) < 1e-14:
        raise DivisionByZeroError(f"rho_21 vanishes at {root}")
    p = complex(rho[0][0](root) / den)
    row = []
    rems = []
    for j in range(2):
        q, r = (rho[0][j] - p * rho[1][j]).divide_linear(root)
        row.append(q)
        rems.append(abs(r))
    return p, [row, rho[1]], rems


def _peel_lower(rho, root):
    """rho = L(p) diag(1, z - root) rho'; zeroes row 2 at ``root``."""
    den = rho[0][0](root)
    if abs(den) < 1e-14:
        raise DivisionByZeroError(f"rho_11 vanishes at {root}")
    p = complex(rho[1][0](root) / den)
    row = []
    rems = []
    for j in range(2):
        q, r = (rho[1][j] - p * rho[0][j]).divide_linear(root)
        row.append(q)
        rems.append(abs(r))
    return p, [rho[0], row], rems


def stepwise_factorize_rho(params: Parameters) -> StepwiseResult:
    """Decreasing power algorithm: peel eta1, -eta1, eta2 from row 1, then -eta2 from row 2."""
    e1, e2 = params.eta1, params.eta2
    rho = rho_entries(params.tau)
    history = [rho]
    ps, rems = [], []
    for root in (e1, -e1, e2):
        p, rho, r = _peel_upper(rho, root)
        ps.append(p)
        rems.extend(r)
        history.append(rho)
    p, rho, r = _peel_lower(rho, -e2)
    ps.append(p)
    rems.extend(r)
    history.append(rho)
    return StepwiseResult(params=params, p=tuple(ps), rho=history, remainders=rems)


def verify_constant_C(params: Parameters, stepwise: StepwiseResult | None = None,
                      tol: float | None = 1e-10) -> np.ndarray:
    """C = v_minus(inf) v_plus(0) / g(0); must equal the identity."""
    if stepwise is None:
        stepwise = stepwise_factorize_rho(params)
    vm_inf = stepwise.v_minus_at_infinity()
    vp0 = v_plus(params, np.array(0.0))
    C = vm_inf @ vp0 / g_scalar(params, 0.0)
    if tol is not None and np.abs(C - np.eye(2)).max() >= tol:
        raise ToleranceError(f"C = {C} differs from I")
    return C


def v_minus_printed_at_infinity(params: Parameters) -> np.ndarray:
    """The printed closed form of v_minus(inf), for comparison with the stepwise value."""
    e1, tau = params.eta1, params.tau
    return np.array([[-tau / (4 * e1), 1j * tau * (e1 + 1) / (8 * e1)],
                     [-0.5j, -0.25]]) / tau


def v_plus_printed_at_zero(params: Parameters) -> np.ndarray:
    e1, e2, tau = params.eta1, params.eta2, params.tau
    return e2 * np.array([[-e1, -1j * tau * (e1 + 1) / 2], [2j * e1, -tau]])


def rho4_leading_printed(params: Parameters) -> np.ndarray:
    e1, tau = params.eta1, params.tau
    return np.array([[tau / (4 * e1), 1j * tau**2 * (e1 + 1) / (8 * e1)], [0.5j, -tau / 4]])


def det_rho4_expected(params: Parameters, z):
    z = np.asarray(z, dtype=complex)
    e1, e2, tau = params.eta1, params.eta2, params.tau
    return tau**2 / (16 * e1**2 * e2**2) * (z**-2 - e1**2) * (z**-2 - e2**2)


def sampled_coefficient(fn, k: int, radius: float = 1.0, N: int = 64) -> complex:
    """k-th Laurent coefficient of a scalar function from N samples on a circle."""
    z = grid_points(radius, N)
    return complex(np.fft.fft(fn(z))[k % N] / N * radius**-k)


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.abs(a - b).max() / max(np.abs(b).max(), 1e-300))


TOLERANCES = {
    "plus_minus": 1e-10, "minus_plus": 1e-10, "det_D_rel": 1e-11, "D_closed_form": 1e-12,
    "det_Psi_rel": 1e-11, "p_rel": 1e-10, "rho11_z2": 1e-9, "det_rho4_rel": 1e-10,
    "rho4_leading": 1e-10, "v_plus0": 1e-10, "v_minus_inf": 1e-10, "C_minus_I": 1e-10,
    "C2_minus_I": 1e-10, "v_minus_large_z": 1e-10, "plus_negative_coeffs": 1e-10,
    "minus_positive_coeffs": 1e-10, "conj_phi_plus": 1e-11, "P5_replaced": 1e-10, "pi_over_g_inverse": 1e-10,
    "branch_ratio": 1.0,
}


def factorization_report(params: Parameters, N: int = 512, seed: int = 0) -> dict[str, float]:
    """Every identity of the factorization as a residual; compare with TOLERANCES."""
    rng = np.random.default_rng(seed)
    fact = build_factorization(params, N=N, check=False)
    out = dict(factorization_residuals(fact, N))
    zr = np.sqrt(rng.uniform(0.25, 4.0, 64)) * np.exp(2j * np.pi * rng.uniform(size=64))
    out["det_D_rel"] = _rel(det2(fact.D(zr)), det_D_expected(params, zr))
    out["D_closed_form"] = _rel(fact.D(zr), D_closed_form(params, zr))
    out["det_Psi_rel"] = _rel(det2(fact.Psi(zr)), 4 * params.eta1 * params.eta2 * (zr - params.tau))

    sw = stepwise_factorize_rho(params)
    out["p_rel"] = max(abs(a / b - 1) for a, b in zip(sw.p, elementary_p(params)[:4]))
    out["stepwise_remainder"] = max(sw.remainders)
    r11 = sw.rho[1][0][0]
    out["rho11_z2"] = abs(sampled_coefficient(r11, 2) + params.tau / 4)
    zo = 1.5 * np.exp(2j * np.pi * rng.uniform(size=16))
    out["det_rho4_rel"] = _rel(det2(sw.rho4_at(zo)), det_rho4_expected(params, zo))
    out["rho4_leading"] = _rel(sw.rho4_at_infinity(), rho4_leading_printed(params))
    out["v_plus0"] = _rel(v_plus(params, np.array(0.0)), v_plus_printed_at_zero(params))
    out["v_minus_inf"] = _rel(sw.v_minus_at_infinity(), v_minus_printed_at_infinity(params))
    C = verify_constant_C(params, sw, tol=None)
    out["C_minus_I"] = float(np.abs(C - np.eye(2)).max())
    out["C2_minus_I"] = float(np.abs(C @ C - np.eye(2)).max())
    zl = 1e3 * np.exp(2j * np.pi * rng.uniform(size=8))
    rhs = g_scalar(params, 1 / zl)[:, None, None] * inv2(v_plus(params, 1 / zl))
    out["v_minus_large_z"] = _rel(sw.v_minus(zl), rhs)

    plus = np.fft.fft(fact.phi_plus(grid_points(1.0, N)), axis=0) / N
    minus = np.fft.fft(fact.phi_minus(grid_points(1.0, N)), axis=0) / N
    out["plus_negative_coeffs"] = float(np.abs(plus[N // 2 + 1:]).max())
    out["minus_positive_coeffs"] = float(np.abs(minus[1: N // 2]).max())
    zs = np.sqrt(rng.uniform(0.04, 0.81, 64)) * np.exp(2j * np.pi * rng.uniform(size=64))
    out["conj_phi_plus"] = float(np.abs(fact.phi_plus(np.conj(zs))
                               - SIGMA3 @ np.conj(fact.phi_plus(zs)) @ SIGMA3).max())
    P5 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    out["P5_replaced"] = max(factorization_residuals(Factorization(params, P5), N).values())
    lhs = inv2(pi_matrix(params, zr) / g_scalar(params, zr)[:, None, None])
    rhs = pi_matrix(params, 1 / zr) / g_scalar(params, 1 / zr)[:, None, None]
    out["pi_over_g_inverse"] = _rel(lhs, rhs)
    out["branch_ratio"] = max(check_branch_continuity(params, r, N) for r in (0.5, 1.0))
    return out


def report_failures(report: dict[str, float]) -> dict[str, float]:
    return {k: v for k, v in report.items() if k in TOLERANCES and not v < TOLERANCES[k]}


__all__ = [
    "ElementaryFactors", "Factorization", "Laurent", "StepwiseResult",
    "build_factorization", "check_branch_continuity", "D_closed_form", "D_matrix",
    "det_D_expected", "elementary_factors", "elementary_p", "factorization_residuals",
    "stepwise_factorize_rho", "v_plus", "verify_constant_C", "factorization_report",
    "report_failures", "TOLERANCES", "det_rho4_expected", "rho4_leading_printed",
]
