"""Closed-form large-n asymptotics of K2 and the constants that enter them.

Two conventions are provided for the leading coefficients of alpha_k, beta_k.

``"exact"`` (default) uses the coefficients that the computed alpha_k,
beta_k actually follow,

    a(p, s) = -2 (tau eta_p - 1)/(tau eta_p - s) gamma_p adj D(s/eta_p) s3 adj D^T(s eta_p),
    b(p, s) = -2 (tau eta_p - 1)/(tau eta_p - s) eps_p   D^T(s eta_p) s3 D(s/eta_p),

and assembles the constants by summing every pair of terms with its own
geometric weight.  Since det D(+-eta_p) = 0, each product a(p,s) b(p,s) has
zero trace, so C1 vanishes identically in both regimes.

``"printed"`` transcribes the closed-form expressions literally (with the
index p' = 3 - p, since p' = 2 - p would put a zero under the square root).
It reproduces part of the reference t = 1 table and is kept for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import scipy.optimize

from ._linalg import SIGMA3, T, adj
from .errors import ToleranceError
from .kernel import k2_deficit, k2_infinity
from .params import Parameters, Regime, compute_parameters
from .wienerhopf import D_matrix

Convention = Literal["exact", "printed"]
CONVENTIONS = ("exact", "printed")
IMAG_TOL = 1e-10


def geometric_k_sum(lam):
    """sum_{k>=1} k e^{-lam k} = e^lam / (e^lam - 1)^2 for Re lam > 0."""
    e = np.exp(lam)
    return e / (e - 1) ** 2


def alternating_k_sum(lam):
    """sum_{k>=1} (-1)^k k e^{-lam k} = -e^lam / (e^lam + 1)^2."""
    e = np.exp(lam)
    return -e / (e + 1) ** 2


def _D(params: Parameters, z) -> np.ndarray:
    return D_matrix(params, np.asarray(z, dtype=complex))


def _radical(params: Parameters, p: int) -> complex:
    e = {1: params.eta1, 2: params.eta2}
    ep, eq = e[p], e[3 - p]
    return complex(np.sqrt((params.eta1**2 - ep**-2) * (params.eta2**2 - ep**-2) * (eq**2 - ep**2)))


def gamma_eps(params: Parameters, p: int) -> tuple[complex, complex]:
    """(gamma_p, eps_p); for p = 2 in the subcritical regime these are gamma_1, gamma_2."""
    e1, e2, tau = params.eta1, params.eta2, params.tau
    ep = e1 if p == 1 else e2
    g0 = 1 / ((tau * ep - 1) * _radical(params, p))
    gamma = g0 / (8 * np.sqrt(2 * np.pi) * e1 * e2 * tau)
    eps = np.sqrt(2) * e1 * e2 * tau * g0 / np.sqrt(np.pi)
    return complex(gamma), complex(eps)


def leading_pair(params: Parameters, p: int, sg: int, convention: Convention = "exact"):
    """(a_0(p, sg), b_0(p, sg)) for the term sg^k eta_p^-k / sqrt(k)."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    ep = params.eta1 if p == 1 else params.eta2
    gamma, eps = gamma_eps(params, p)
    Din = _D(params, sg / ep)
    Dout = _D(params, sg * ep)
    a = gamma * adj(Din) @ SIGMA3 @ adj(T(Dout))
    if convention == "printed":
        b = eps * Din @ SIGMA3 @ T(Dout)
        return a, b
    fac = -2 * (params.tau * ep - 1) / (params.tau * ep - sg)
    b = eps * T(Dout) @ SIGMA3 @ Din
    return fac * a, fac * b


def _nearest_root(params: Parameters) -> int:
    """Label of the real root closest to the unit circle (2 with the default labels)."""
    return 2 if abs(params.eta2) <= abs(params.eta1) else 1


@dataclass(frozen=True)
class LeadingSub:
    a00: np.ndarray
    a01: np.ndarray
    b00: np.ndarray
    b01: np.ndarray
    gamma1: complex
    gamma2: complex


def leading_coeffs_sub(params: Parameters, convention: Convention = "exact") -> LeadingSub:
    """a_0^0, a_0^1, b_0^0, b_0^1 of the expansion alpha_k ~ eta2^-k (a^0 + (-1)^k a^1)/sqrt(k)."""
    if params.regime is not Regime.SUBCRITICAL:
        raise ValueError("leading_coeffs_sub needs 0 < t < 1/2")
    p = _nearest_root(params)
    a0, b0 = leading_pair(params, p, 1, convention)
    a1, b1 = leading_pair(params, p, -1, convention)
    g1, g2 = gamma_eps(params, p)
    return LeadingSub(a0, a1, b0, b1, g1, g2)


def leading_coeffs_super(params: Parameters, convention: Convention = "exact",
                         tol: float = 1e-10) -> dict[tuple[int, int], tuple[np.ndarray, np.ndarray]]:
    """{(p, sg): (a_0(p, sg), b_0(p, sg))}; asserts conj a(2, sg) = s3 a(1, sg) s3."""
    if params.regime is not Regime.SUPERCRITICAL:
        raise ValueError("leading_coeffs_super needs 1/2 < t <= 1")
    out = {(p, sg): leading_pair(params, p, sg, convention) for p in (1, 2) for sg in (1, -1)}
    for sg in (1, -1):
        for i in range(2):
            lhs = np.conj(out[2, sg][i])
            rhs = SIGMA3 @ out[1, sg][i] @ SIGMA3
            if np.abs(lhs - rhs).max() > tol * max(1.0, np.abs(rhs).max()):
                raise ToleranceError(f"conjugacy of leading coefficients fails for sigma={sg}")
    return out


def _real(x: complex, name: str, scale: float = 1.0) -> float:
    if abs(np.imag(x)) > IMAG_TOL * max(1.0, scale):
        raise ToleranceError(f"{name} has imaginary part {np.imag(x):.3e}")
    return float(np.real(x))


@dataclass(frozen=True)
class AsymptoticConstants:
    regime: Regime
    convention: str
    t: float
    k2_inf: float
    xi: float
    C1: float
    C2: float
    omega: float | None = None
    C3: float | None = None
    C4: float | None = None
    phi1: float | None = None
    phi2: float | None = None
    s: float = 0.0
    theta: float = 0.0
    d: dict = field(default_factory=dict, repr=False)
    a0_parts: dict = field(default_factory=dict, repr=False)
    b0_parts: dict = field(default_factory=dict, repr=False)

    def bracket(self, n):
        """Leading term c0(n) of 2n e^{2ns} (1 - K2(n)/K2(inf))."""
        n = np.asarray(n, dtype=float)
        alt = np.where(np.asarray(n).astype(int) % 2 == 0, 1.0, -1.0)
        if self.regime is Regime.SUBCRITICAL:
            return self.C1 - alt * self.C2
        w = self.omega * n
        return (self.C1 * np.cos(w + self.phi1) + self.C2 * alt * np.cos(w + self.phi2)
                + self.C3 + self.C4 * alt)

    def as_dict(self) -> dict:
        keys = ("t", "k2_inf", "xi", "omega", "C1", "C2", "C3", "C4", "phi1", "phi2")
        out = {"regime": self.regime.value, "convention": self.convention}
        out.update({k: getattr(self, k) for k in keys if getattr(self, k) is not None})
        return out


def constants_sub(params: Parameters, convention: Convention = "exact") -> AsymptoticConstants:
    """C1, C2 and xi = 1/(2 ln eta2) for 0 < t < 1/2."""
    L = leading_coeffs_sub(params, convention)
    e2 = float(np.exp(params.s))
    tr1 = np.trace(L.a00 @ L.b00 + L.a01 @ L.b01)
    tr2 = np.trace(L.a00 @ L.b01 + L.a01 @ L.b00)
    C1 = e2**2 * tr1 / (e2**2 - 1) ** 2
    C2 = e2**2 * tr2 / (e2**2 + 1) ** 2
    scale = abs(C1) + abs(C2)
    return AsymptoticConstants(
        regime=Regime.SUBCRITICAL, convention=convention, t=params.t,
        k2_inf=float(k2_infinity(params.t)), xi=params.correlation_length,
        C1=_real(C1, "C1", scale), C2=_real(C2, "C2", scale), s=params.s,
        a0_parts={1: L.a00, -1: L.a01}, b0_parts={1: L.b00, -1: L.b01})


def _d_exact(params: Parameters, coeffs) -> dict[str, complex]:
    """Sum Tr(a(p,s) b(q,s')) w/(1-w)^2 with w = s s'/(eta_p eta_q), grouped by n-dependence.

    The n-th term carries (s s')^n (eta_p eta_q)^-n.  Pairs of roots in the
    upper half-plane go with e^{-2i theta n} (class 1), pairs in the lower
    half-plane with e^{+2i theta n} (class 3), and mixed pairs carry no phase
    (class 2).  Classifying by the root rather than its label keeps the result
    invariant under relabelling.  The second digit is 1 for s s' = +1 and 2
    for s s' = -1, matching (-1)^n.
    """
    eta = {1: params.eta1, 2: params.eta2}
    half = {p: int(np.sign(eta[p].imag)) for p in eta}
    d: dict[str, complex] = {}
    for (p, sg), (a, _) in coeffs.items():
        for (q, sq), (_, b) in coeffs.items():
            w = sg * sq / (eta[p] * eta[q])
            cls = {2: "1", -2: "3"}.get(half[p] + half[q], "2")
            key = cls + ("1" if sg * sq == 1 else "2")
            d[key] = d.get(key, 0) + np.trace(a @ b) * w / (1 - w) ** 2
    return d


def _d_printed(params: Parameters, coeffs) -> dict[str, complex]:
    """c_ij and d_ij as literally written (p = 1 paired with e^{-i theta k})."""
    a = {k: v[0] for k, v in coeffs.items()}
    b = {k: v[1] for k, v in coeffs.items()}
    c = {
        "11": a[1, 1] @ b[1, 1] + a[1, -1] @ b[1, -1],
        "12": a[1, 1] @ b[1, -1] + a[1, -1] @ b[1, 1],
        "21": a[1, 1] @ b[2, 1] + a[2, 1] @ b[1, 1] + a[1, -1] @ b[2, -1] + a[2, -1] @ b[1, -1],
        "22": a[1, 1] @ b[2, -1] + a[2, -1] @ b[1, 1] + a[2, 1] @ b[1, -1] + a[1, -1] @ b[2, 1],
        "31": a[2, 1] @ b[2, 1] + a[2, -1] @ b[2, -1],
        "32": a[2, 1] @ b[2, -1] + a[2, -1] @ b[2, 1],
    }
    s, th = params.s, params.theta
    lam = {"1": 2 * s + 2j * th, "2": 2 * s, "3": 2 * s - 2j * th}
    d = {}
    for key, cm in c.items():
        e = np.exp(lam[key[0]])
        tr = np.trace(cm)
        d[key] = e * tr / (e - 1) ** 2 if key[1] == "1" else -e * tr / (e + 1) ** 2
    return d


def constants_super(params: Parameters, convention: Convention = "exact",
                    tol: float = 1e-10) -> AsymptoticConstants:
    """C1..C4, phi1, phi2, omega = 2 theta and xi = 1/(2s) for 1/2 < t <= 1."""
    coeffs = leading_coeffs_super(params, convention, tol)
    d = _d_exact(params, coeffs) if convention == "exact" else _d_printed(params, coeffs)
    scale = max(abs(v) for v in d.values())
    for x, y in (("11", "31"), ("12", "32")):
        if abs(np.conj(d[x]) - d[y]) > tol * max(1.0, scale):
            raise ToleranceError(f"d{y} is not the conjugate of d{x}")

    def phase(v):
        # a vanishing amplitude has no meaningful phase
        return float(-np.angle(v)) if abs(v) > 1e-12 * max(1.0, scale) else 0.0

    return AsymptoticConstants(
        regime=Regime.SUPERCRITICAL, convention=convention, t=params.t,
        k2_inf=float(k2_infinity(params.t)), xi=params.correlation_length,
        omega=2 * params.theta, s=params.s, theta=params.theta,
        C1=float(2 * abs(d["11"])), phi1=phase(d["11"]),
        C2=float(2 * abs(d["12"])), phi2=phase(d["12"]),
        C3=_real(d["21"], "C3", scale), C4=_real(d["22"], "C4", scale),
        d=d, a0_parts={k: v[0] for k, v in coeffs.items()},
        b0_parts={k: v[1] for k, v in coeffs.items()})


def constants(params: Parameters, convention: Convention = "exact") -> AsymptoticConstants:
    if params.regime is Regime.SUBCRITICAL:
        return constants_sub(params, convention)
    return constants_super(params, convention)


def limit_constants(convention: Convention = "printed") -> AsymptoticConstants:
    """Constants evaluated at the t = 1 parameters, where they are still algebraic."""
    return constants_super(compute_parameters(1.0, limit=True), convention)


def k2_asymptotic(params: Parameters, n, consts: AsymptoticConstants | None = None,
                  convention: Convention = "exact"):
    """K2(inf) [1 - e^{-2ns}/(2n) c0(n)]."""
    if consts is None:
        consts = constants(params, convention)
    n = np.asarray(n, dtype=float)
    return consts.k2_inf * (1 - np.exp(-2 * n * params.s) / (2 * n) * consts.bracket(n))


# -- comparison with the exact route ---------------------------------------------

def extracted_bracket(t: float, ns) -> np.ndarray:
    """2n e^{2ns} (1 - K2(n)/K2(inf)) from the Fredholm route."""
    s = compute_parameters(t).s
    return np.array([2 * n * np.exp(2 * n * s) * k2_deficit(t, n) for n in ns])


@dataclass(frozen=True)
class OscillatoryFit:
    omega: float
    C1: float
    phi1: float
    C2: float
    phi2: float
    C3: float
    C4: float
    coef: np.ndarray
    residual: float  # ||y - model|| / ||y||

    def leading(self, n):
        n = np.asarray(n, dtype=float)
        alt = np.where(n.astype(int) % 2 == 0, 1.0, -1.0)
        w = self.omega * n
        return (self.C1 * np.cos(w + self.phi1) + self.C2 * alt * np.cos(w + self.phi2)
                + self.C3 + self.C4 * alt)


def _design(ns: np.ndarray, omega: float) -> np.ndarray:
    alt = np.where(ns % 2 == 0, 1.0, -1.0)
    w = omega * ns
    base = np.column_stack([np.cos(w), np.sin(w), alt * np.cos(w), alt * np.sin(w),
                            np.ones_like(w), alt])
    # the remainder is taken inside the bracket: c0 (1 + c/n)
    return np.hstack([base, base / ns[:, None]])


def _lstsq(ns, y, omega):
    A = _design(ns, omega)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return coef, float(np.linalg.norm(y - A @ coef) / np.linalg.norm(y))


def fit_oscillatory(ns, y, omega_bounds=(1e-3, np.pi / 2), grid: int = 400) -> OscillatoryFit:
    """Least-squares fit of the four-term oscillatory bracket with a free frequency.

    omega is restricted to (0, pi/2): on integer n the frequencies omega and
    pi - omega produce the same basis once the (-1)^n terms are included.
    """
    ns = np.asarray(ns, dtype=float)
    y = np.asarray(y, dtype=float)
    lo, hi = omega_bounds
    scan = np.linspace(lo, hi, grid)
    res = [_lstsq(ns, y, w)[1] for w in scan]
    i = int(np.argmin(res))
    a, b = scan[max(i - 1, 0)], scan[min(i + 1, grid - 1)]
    opt = scipy.optimize.minimize_scalar(lambda w: _lstsq(ns, y, w)[1], bounds=(a, b),
                                         method="bounded", options={"xatol": 1e-10})
    omega = float(opt.x)
    coef, resid = _lstsq(ns, y, omega)
    c1, s1, c2, s2, c3, c4 = coef[:6]
    return OscillatoryFit(omega=omega, C1=float(np.hypot(c1, s1)), phi1=float(np.arctan2(-s1, c1)),
                          C2=float(np.hypot(c2, s2)), phi2=float(np.arctan2(-s2, c2)),
                          C3=float(c3), C4=float(c4), coef=coef, residual=resid)


__all__ = [
    "AsymptoticConstants", "CONVENTIONS", "LeadingSub", "OscillatoryFit", "alternating_k_sum",
    "constants", "constants_sub", "constants_super", "extracted_bracket", "fit_oscillatory",
    "gamma_eps", "geometric_k_sum", "k2_asymptotic", "leading_coeffs_sub", "leading_coeffs_super",
    "leading_pair", "limit_constants",
]
