# %% [markdown]
# Constants at t = 1
#
# The symbol is singular at t = 1 but the constants are algebraic in
# eta1, eta2, tau and can be evaluated there.  Both coefficient conventions
# are shown; see docs/schema.md for what each field means.

# %%
from dimercorr.asymptotics import limit_constants

for conv in ("printed", "exact"):
    c = limit_constants(conv)
    print(conv)
    print(f"  K2(inf)={c.k2_inf:.6f} xi={c.xi:.7f} omega={c.omega:.6f}")
    print(f"  C1/2={c.C1 / 2:.6f} C2/2={c.C2 / 2:.6f} C3/2={c.C3 / 2:.6f} C4/2={c.C4 / 2:.6f}")
    print(f"  phi1={c.phi1:+.6f} phi2={c.phi2:+.6f}")
