import numpy as np
import pytest

from dimercorr import kernel, toeplitz
from dimercorr.kernel import (AlphaBeta, alpha, alpha_beta_coeffs, alpha_from_factors, beta,
                              beta_from_factors, build_lambda, fredholm_k2, k2_deficit, lambda_operator,
                              log1p_complex, truncation_size)
from dimercorr.params import compute_parameters
from dimercorr.quadrature import BlockFourierSeries
from dimercorr.symbol import grid_points
from dimercorr.wienerhopf import build_factorization


@pytest.fixture(scope="module", params=[0.3, 0.7])
def ab(request):
    fact = build_factorization(compute_parameters(request.param))
    return alpha_beta_coeffs(fact, 256)


def test_closed_forms_match_factor_products(ab):
    z = grid_points(0.8, 64)
    assert np.abs(alpha(ab.fact, z) - alpha_from_factors(ab.fact, z)).max() < 1e-11
    assert np.abs(beta(ab.fact, z) - beta_from_factors(ab.fact, z)).max() < 1e-11


@pytest.mark.parametrize("parity", [0, 1])
def test_alpha_decay_rate(ab, parity):
    P = ab.fact.params
    ks = np.arange(20 + parity, 81, 2)
    m = np.log(np.abs(ab.alpha_coeffs.block(ks)).max(axis=(1, 2)))
    if P.regime.value == "subcritical":
        m = m + 0.5 * np.log(ks)
        assert np.corrcoef(ks, m)[0, 1] < -0.99999
    slope = np.polyfit(ks, m, 1)[0]
    assert slope == pytest.approx(-P.s, rel=0.02)


def test_alpha_is_sum_of_branch_point_terms(ab):
    P = ab.fact.params
    ks = np.arange(30, 81)
    y = ab.alpha_coeffs.block(ks)[:, 0, 1]
    cols = [e ** (-ks.astype(float)) * ks**-q
            for e in (P.eta1, -P.eta1, P.eta2, -P.eta2) for q in (0.5, 1.5)]
    A = np.array(cols).T
    c, *_ = np.linalg.lstsq(A, y, rcond=None)
    assert np.linalg.norm(A @ c - y) / np.linalg.norm(y) < 0.05


def test_trace_formula(ab):
    n = 8
    L = build_lambda(ab, n, truncation_size(ab.fact.params, n))
    ks = np.arange(1, 200)
    series = np.sum(ks * np.trace(ab.alpha_coeffs.block(ks + n) @ ab.beta_coeffs.block(ks + n),
                                  axis1=1, axis2=2))
    assert L.trace() == pytest.approx(series, rel=1e-10, abs=1e-300)


def test_norm_decays_like_exp_minus_2s():
    P = compute_parameters(0.3)
    norms = [lambda_operator(0.3, n).norm1() for n in (10, 12, 14, 16, 18, 20)]
    ratios = np.array(norms[1:]) / np.array(norms[:-1])
    # two steps of n: e^{-4 s} per ratio
    assert np.exp(np.mean(np.log(ratios)) / 2) == pytest.approx(np.exp(-2 * P.s), rel=0.2)


@pytest.mark.parametrize("t,n", [(0.3, 5), (0.3, 15), (0.7, 5), (0.7, 10)])
def test_log_det_close_to_minus_trace(t, n):
    L = lambda_operator(t, n)
    tr = L.trace().real
    assert abs(L.logdet().real + tr) < 10 * tr**2


def test_zero_alpha_gives_unit_determinant(ab):
    zero = BlockFourierSeries(np.zeros_like(ab.alpha_coeffs.coeffs))
    L = build_lambda(AlphaBeta(ab.fact, zero, ab.beta_coeffs, ab.radius), 5, check=False)
    assert L.det() == 1.0


@pytest.mark.parametrize("t", [0.2, 0.3, 0.6, 0.9])
@pytest.mark.parametrize("n", [1, 3, 8, 20])
def test_agrees_with_block_toeplitz(t, n):
    assert fredholm_k2(t, n) == pytest.approx(toeplitz.toeplitz_k2(t, n), rel=1e-10)


def test_determinant_positive_and_real():
    for n in (1, 2, 6, 30):
        d = kernel.fredholm_det(0.3, n)
        assert d > 0


def test_deficit_keeps_digits_far_out():
    # LU gives exactly 1 here; the eigenvalue form still resolves the deviation
    d = k2_deficit(0.7, 40)
    assert 0 < abs(d) < 1e-20
    assert abs(kernel.fredholm_det(0.7, 40) - 1) < 1e-15


def test_log1p_complex_tiny():
    w = np.array([1e-30 + 1e-31j, -1e-20, 0.5j])
    assert np.allclose(log1p_complex(w), np.log(1 + w.astype(complex)), rtol=0, atol=1e-16)
    assert log1p_complex(1e-30 + 0j).real == pytest.approx(1e-30, rel=1e-12)


def test_truncation_size_grows_with_n():
    P = compute_parameters(0.3)
    assert truncation_size(P, 20) > truncation_size(P, 10) >= 10
