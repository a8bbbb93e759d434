"""Batched 2x2 helpers; arrays carry the matrix in the last two axes."""

import numpy as np

SIGMA3 = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)


def adj(m):
    m = np.asarray(m)
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 1, 1] = m[..., 0, 0]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    return out


def det2(m):
    m = np.asarray(m)
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def inv2(m):
    return adj(m) / det2(m)[..., None, None]


def T(m):
    return np.swapaxes(m, -1, -2)


def mat2(a, b, c, d):
    """Stack four broadcastable arrays into [[a, b], [c, d]]."""
    a, b, c, d = np.broadcast_arrays(*(np.asarray(v, dtype=complex) for v in (a, b, c, d)))
    out = np.empty(a.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = a
    out[..., 0, 1] = b
    out[..., 1, 0] = c
    out[..., 1, 1] = d
    return out


def diag2(a, d):
    return mat2(a, 0.0, 0.0, d)
