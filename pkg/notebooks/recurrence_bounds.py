# %% [markdown]
# # The S_d recurrence
#
# `S_d(r) = c_alpha s(r) + 2 S_d(alpha r)` counts how many vertices are left
# over when a graph is cut into pieces smaller than `d`.

# %%
from qldpc_bounds import PowerLaw, RecurrenceParams, closed_form_check, eval_S_d, transversal_level_formula
from qldpc_bounds.bounds import iterate_S_d

# %%
square_root = RecurrenceParams(PowerLaw(1.0, 0.5, integer=True))
print("S_4(16) with s = ceil(sqrt r):", eval_S_d(square_root, 4, 16))

# %% [markdown]
# For `c < 1` the leftover grows like `d**(c-1) n`: the ratio levels off.

# %%
for c in (0.5, 0.8):
    params = RecurrenceParams(PowerLaw(1.0, c))
    rep = closed_form_check(params, 16, [16 * 2**j for j in range(21)])
    print(f"c={c}: ratios", " ".join(f"{r:.2f}" for r in rep.ratios[::4]), "bounded:", rep.bounded)

# %% [markdown]
# Iterating `S_d` gives the number of nested correctable regions, which
# caps the transversal gate level.

# %%
params = RecurrenceParams(PowerLaw(1.0, 0.5))
for n in (10**4, 10**6, 10**8):
    d = round(n ** 0.5)
    print(f"n={n:>10d} d={d:>5d} rounds={iterate_S_d(params, d, n)}")
print("formula levels:", transversal_level_formula(0.5, 0.5), transversal_level_formula(0.5, 1 / 3))
