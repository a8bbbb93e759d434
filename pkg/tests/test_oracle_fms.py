import itertools

import numpy as np
import pytest

from dimercorr import kernel, oracle_fms, toeplitz
from dimercorr.errors import DomainError
from dimercorr.oracle_fms import floor_sign, fms_determinant, fms_k2, fms_matrices, needed_indices, step


def test_floor_sign_table():
    # (-1)^floor(m/2) cycles + + - - with period 4, including negative m
    expect = {m: [1, 1, -1, -1][m % 4] for m in range(-8, 9)}
    for m, s in expect.items():
        assert floor_sign(m) == s


def test_step():
    assert [step(k) for k in (-2, 0, 1, 5)] == [0, 0, 1, 1]


def test_needed_indices_cover_all_entries():
    for j, k in itertools.product(range(1, 5), repeat=2):
        r, q = needed_indices(4)
        assert k - j + 1 in r and 5 - k - j in q


@pytest.mark.parametrize("t,n", [(0.3, 3), (0.6, 5), (0.8, 8)])
def test_block_identity(t, n):
    m = fms_matrices(t, n)
    a = fms_determinant(m)
    b = fms_determinant(m, via_blocks=True)
    assert abs(a - b) < 1e-10 * abs(a)


def test_blocks_real_and_imaginary():
    m = fms_matrices(0.4, 6)
    assert m.R_block.dtype == float
    assert np.abs(m.Q_block.real).max() == 0.0


@pytest.mark.parametrize("t", [0.2, 0.3, 0.6, 0.8])
@pytest.mark.parametrize("n", [1, 2, 5, 9, 16])
def test_matches_block_toeplitz(t, n):
    assert fms_k2(t, n) == pytest.approx(toeplitz.toeplitz_k2(t, n), rel=1e-8)


@pytest.mark.parametrize("t", [0.3, 0.8])
def test_saturates_to_long_distance_value(t):
    dev = [abs(fms_k2(t, n) / kernel.k2_infinity(t) - 1) for n in (4, 8, 12, 16)]
    assert dev[-1] < 1e-5
    assert all(b < a for a, b in zip(dev, dev[1:]) if a > 1e-12)


def test_zero_based_indexing_disagrees():
    assert abs(fms_k2(0.3, 5, origin=0) / toeplitz.toeplitz_k2(0.3, 5) - 1) > 0.1


def test_domain():
    with pytest.raises(DomainError):
        fms_matrices(1.2, 3)
    with pytest.raises(ValueError):
        fms_k2(0.3, 17)
