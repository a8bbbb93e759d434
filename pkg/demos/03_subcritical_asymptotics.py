# %% [markdown]
# Approach to K2(inf) below t = 1/2
#
# For 0 < t < 1/2 the deviation decays like e^{-2 n ln eta2}/(2n) with an
# even/odd alternating amplitude.  We extract the bracket
# 2n e^{2ns} (1 - K2(n)/K2(inf)) from the exact route and compare.

# %%
import numpy as np

from dimercorr import compute_parameters
from dimercorr.asymptotics import constants, extracted_bracket

# %%
t = 0.3
P = compute_parameters(t)
for conv in ("exact", "printed"):
    c = constants(P, conv)
    print(f"{conv:8s} C1={c.C1:+.6f} C2={c.C2:+.6f} xi={c.xi:.6f}")

# %%
c = constants(P)
ns = np.arange(10, 61, 5)
y = extracted_bracket(t, ns)
for n, v in zip(ns, y):
    print(f"n={n:3d} extracted {v:+.5f}  leading {c.bracket(n):+.5f}  rel.err {v / c.bracket(n) - 1:+.2%}")

# %% [markdown]
# The remainder is O(1/n): n times the relative error settles to a constant
# on each parity.

# %%
for parity in (0, 1):
    ns = np.arange(40 + parity, 121, 20)
    print(parity, [f"{n * (extracted_bracket(t, [n])[0] / c.bracket(n) - 1):+.3f}" for n in ns])
