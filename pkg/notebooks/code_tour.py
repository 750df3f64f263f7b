# %% [markdown]
# # A tour of the small codes
#
# Build the built-in families, look at their connectivity graphs, and compare
# the brute-force distance with the treewidth bound `delta * (tw + 1)`.

# %%
from qldpc_bounds import (
    brute_distance,
    build_connectivity,
    dimension_bound,
    distance_bound,
    dz_correctable,
    exact_treewidth,
    is_correctable_oracle,
    make_family,
)

codes = [make_family("repetition", 3), make_family("five_qubit"), make_family("steane"),
         make_family("surface", 3), make_family("toric", 2)]

# %% [markdown]
# Distance against the treewidth bound. The bound is loose on these tiny
# codes, but it never fails.

# %%
for code in codes:
    g = build_connectivity(code)
    tw, _ = exact_treewidth(g)
    d = brute_distance(code)
    print(f"{code.name:14s} n={code.n:2d} k={code.k} d={d}  delta={g.max_degree} tw={tw}  "
          f"bound={distance_bound(tw, g.max_degree)}")

# %% [markdown]
# The rank test and the logical-operator oracle agree on every region of
# the Steane code.

# %%
steane = make_family("steane")
regions = [[q for q in range(7) if m >> q & 1] for m in range(1 << 7)]
agree = sum(dz_correctable(steane, r) == is_correctable_oracle(steane, r) for r in regions)
print(f"{agree}/{len(regions)} regions agree")
print("largest correctable size:", max(len(r) for r in regions if dz_correctable(steane, r)))

# %% [markdown]
# Dimension bound from two rounds of recursive separation.

# %%
for code in codes:
    g = build_connectivity(code)
    res = dimension_bound(g, code, brute_distance(code), exact_sep_max=16)
    w = res.witness
    print(f"{code.name:14s} k={code.k} <= |C|={res.k_upper}  (|A|={len(w.A)}, |B|={len(w.B)})")
