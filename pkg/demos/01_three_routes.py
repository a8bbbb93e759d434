# %% [markdown]
# K2(n) three ways
#
# The monomer-monomer correlation along a lattice row can be computed from
# the 2n x 2n determinant of double integrals, from the block Toeplitz
# determinant of the 2x2 symbol phi, or from the Fredholm determinant
# det(I - Lambda) built on the Wiener-Hopf factors.  They should agree to
# rounding.

# %%
import numpy as np

from dimercorr import fms_k2, fredholm_k2, k2_infinity, toeplitz_k2

# %%
print(f"{'t':>4} {'n':>3} {'FMS':>20} {'Toeplitz':>20} {'Fredholm':>20}")
for t in (0.2, 0.3, 0.6, 0.8):
    for n in (1, 4, 8):
        print(f"{t:4.1f} {n:3d} {fms_k2(t, n):20.16f} {toeplitz_k2(t, n):20.16f} {fredholm_k2(t, n):20.16f}")

# %% [markdown]
# Far apart the monomers decouple and K2 approaches half the square root of
# the order parameter E.

# %%
for t in (0.3, 0.7):
    ns = np.arange(1, 31)
    dev = [fredholm_k2(t, n) / k2_infinity(t) - 1 for n in ns]
    print(t, " ".join(f"{d:+.1e}" for d in dev[::5]))
