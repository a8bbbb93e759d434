import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimercorr._linalg import det2
from dimercorr.errors import DivisionByZeroError
from dimercorr.params import compute_parameters
from dimercorr.symbol import grid_points, phi_z
from dimercorr.wienerhopf import (TOLERANCES, Laurent, _peel_upper, build_factorization,
                                  D_closed_form, D_matrix, det_D_expected, elementary_p,
                                  factorization_report, report_failures, stepwise_factorize_rho,
                                  verify_constant_C)

TS = [0.1, 0.3, 0.45, 0.55, 0.7, 0.9]


@pytest.mark.parametrize("t", TS)
def test_report_within_tolerances(t):
    rep = factorization_report(compute_parameters(t))
    assert set(TOLERANCES) <= set(rep)
    assert report_failures(rep) == {}


@pytest.mark.parametrize("t", [0.3, 0.7])
def test_both_factorizations_reproduce_phi(t):
    fact = build_factorization(compute_parameters(t))
    z = grid_points(1.0, 128)
    phi = phi_z(fact.params, z)
    assert np.abs(fact.phi_plus(z) @ fact.phi_minus(z) - phi).max() < 1e-11
    assert np.abs(fact.theta_minus(z) @ fact.theta_plus(z) - phi).max() < 1e-11


def test_simple_p_closed_forms():
    P = compute_parameters(0.3)
    e1, e2, tau = P.eta1, P.eta2, P.tau
    p = elementary_p(P)
    assert p[1] == pytest.approx(-1j * (e1**2 + 1) / (e1**2 - 1))
    assert p[3] == pytest.approx(-2j * e1 * e2 / tau)
    sw = stepwise_factorize_rho(P)
    assert np.allclose(sw.p, p[:4], rtol=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 0.95).filter(lambda t: abs(t - 0.5) > 0.02))
def test_det_D_and_closed_form(t):
    P = compute_parameters(t)
    z = np.array([0.3 + 0.2j, -1.1, 2.0j, 0.7 - 1.5j])
    assert np.allclose(det2(D_matrix(P, z)), det_D_expected(P, z), rtol=1e-10)
    assert np.allclose(D_matrix(P, z), D_closed_form(P, z), rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("t", [0.2, 0.8])
def test_constant_is_identity(t):
    C = verify_constant_C(compute_parameters(t))
    assert np.abs(C - np.eye(2)).max() < 1e-10


def test_other_P5_still_factorizes():
    P = compute_parameters(0.3)
    fact = build_factorization(P, P5=np.array([[2.0, 1j], [0.5, 1.0]]))
    z = grid_points(1.0, 64)
    assert np.abs(fact.phi_plus(z) @ fact.phi_minus(z) - phi_z(P, z)).max() < 1e-10


def test_plus_factor_is_analytic_inside():
    fact = build_factorization(compute_parameters(0.7))
    c = np.fft.fft(fact.phi_plus(grid_points(1.0, 256)), axis=0) / 256
    assert np.abs(c[129:]).max() < 1e-11


def test_peel_raises_on_vanishing_pivot():
    zero = Laurent(np.zeros(1, dtype=complex))
    rho = [[Laurent(np.array([1.0 + 0j])), zero], [zero, Laurent(np.array([1.0 + 0j]))]]
    with pytest.raises(DivisionByZeroError):
        _peel_upper(rho, 0.5)


def test_laurent_arithmetic():
    a = Laurent(np.array([1, 2, 3], dtype=complex), -1)  # z^-1 + 2 + 3z
    b = Laurent(np.array([1, -1], dtype=complex), 0)
    z = np.array([0.4 + 0.3j, 2.0])
    assert np.allclose((a * b)(z), a(z) * b(z))
    assert np.allclose((a - b + 2)(z), a(z) - b(z) + 2)
    q, r = Laurent(np.array([-2, 1, 1], dtype=complex)).divide_linear(1.0)  # (z-1)(z+2)
    assert abs(r) < 1e-14 and np.allclose(q(z), z + 2)
    assert a.coef(1) == 3 and a.coef(5) == 0
