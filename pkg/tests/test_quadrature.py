import numpy as np
import pytest

from dimercorr._linalg import adj
from dimercorr.errors import AliasError, ConvergenceError
from dimercorr.quadrature import (BlockFourierSeries, auto_fourier, fourier_block, rq_integrals,
                                  rq_table)
from dimercorr.symbol import phi_on_circle, sample


def direct_rq(t, k, M):
    """Plain tensor-product trapezoid sum of the defining double integrals."""
    x = 2 * np.pi * np.arange(M) / M - np.pi
    X, Y = np.meshgrid(x, x, indexing="ij")
    den = np.cos(X) ** 2 + np.cos(Y) ** 2 + t * t * np.cos(X + Y) ** 2
    w = (2 * np.pi / M) ** 2 / (8 * np.pi**2)
    if k % 2 == 0:
        return w * np.sum(np.cos(Y) * np.cos(k * X + Y) / den), 0.0
    R = t * w * np.sum(np.cos(X + Y) * np.cos(k * X + Y) / den)
    Q = w * np.sum(np.cos(X) * np.cos(k * X) / den)
    return R, Q


def test_identity_function():
    c = fourier_block(sample(lambda z: z[:, None, None] * np.eye(2), 1.0, 64), check=False)
    assert np.allclose(c[1], np.eye(2), atol=1e-14)
    others = np.delete(c.coeffs, c.K + 1, axis=0)
    assert np.abs(others).max() < 1e-14


def test_constant_function():
    m = np.array([[1, 2j], [3, 4]])
    c = fourier_block(sample(lambda z: m, 1.3, 64), check=False)
    assert np.allclose(c[0], m, atol=1e-14)
    assert np.abs(np.delete(c.coeffs, c.K, axis=0)).max() < 1e-13


def test_radius_correction():
    # z^3 sampled on radius 0.7 still has coefficient 1 at k = 3
    c = fourier_block(sample(lambda z: (z**3)[:, None, None] * np.eye(2), 0.7, 64), check=False)
    assert np.allclose(c[3], np.eye(2), atol=1e-13)


def test_phi_coefficients_adjugate_symmetry_and_resum():
    c = auto_fourier(phi_on_circle(0.3))
    for k in range(0, 40):
        assert np.abs(c[-k] - adj(c[k])).max() < 1e-12
    z = np.exp(2j * np.pi * np.arange(64) / 64)
    assert np.abs(c.resum(z) - phi_on_circle(0.3)(z)).max() < 1e-12


def test_exponential_decay_rate():
    # branch points at +-eta2 set the rate; the k^(-1/2) prefactor is divided out
    from dimercorr.params import compute_parameters
    P = compute_parameters(0.3)
    c = auto_fourier(phi_on_circle(0.3))
    ks = np.arange(5, 61)
    mags = np.log(np.abs(c.block(ks)).max(axis=(1, 2))) + 0.5 * np.log(ks)
    assert np.corrcoef(ks, mags)[0, 1] < -0.999
    slope = np.polyfit(ks, mags, 1)[0]
    assert slope == pytest.approx(-np.log(abs(P.eta2)), rel=0.01)


def test_tail_is_small_for_auto_grid():
    c = auto_fourier(phi_on_circle(0.3))
    assert np.abs(c[c.K]).max() < 1e-13 * np.abs(c.coeffs).max()


def test_alias_error_on_coarse_grid():
    slow = lambda z: (1 / (1 - 0.97 * z))[:, None, None] * np.eye(2)
    with pytest.raises(AliasError):
        fourier_block(sample(slow, 1.0, 64))


def test_window_errors():
    with pytest.raises(ValueError):
        fourier_block(sample(lambda z: np.eye(2), 1.0, 64), K=40)
    c = BlockFourierSeries(np.zeros((5, 2, 2)))
    with pytest.raises(IndexError):
        c[3]


@pytest.mark.parametrize("k", [-3, -2, 0, 1, 2, 5])
def test_fft_sums_match_direct_summation(k):
    R, Q = rq_integrals(0.3, k, M=64)
    Rd, Qd = direct_rq(0.3, k, 64)
    assert R == pytest.approx(Rd, abs=1e-13)
    assert Q == pytest.approx(Qd, abs=1e-13)


def test_even_k_has_zero_q():
    for k in (-4, 0, 2, 6):
        assert rq_integrals(0.4, k)[1] == 0.0


def test_grid_refinement():
    a = rq_integrals(0.3, 2, M=256)[0]
    b = rq_integrals(0.3, 2, M=512)[0]
    assert abs(a - b) < 1e-10


def test_q_even_in_k():
    tab = rq_table(0.3, [-5, -3, -1, 1, 3, 5])
    for k in (1, 3, 5):
        assert tab[-k][1] == pytest.approx(tab[k][1], abs=1e-12)


def test_convergence_error():
    with pytest.raises(ConvergenceError):
        rq_table(0.01, [1], M_max=512)
