# %% [markdown]
# # How separators scale
#
# Grids need about `sqrt(n)` vertices to split, hyperbolic patches only
# about `log n`, and random regular graphs a constant fraction of `n`.

# %%
import math

from qldpc_bounds import heuristic_separator
from qldpc_bounds.generators import geometric_cut_separator, make_grid, make_hyperbolic_patch, make_random_regular
from qldpc_bounds.profile import fit_exponent, separability_profile
from qldpc_bounds.spectral import cheeger_estimate

# %%
ns, seps = [], []
for side in (16, 24, 32, 48, 64):
    g = make_grid(2, side).graph
    ns.append(g.n)
    seps.append(heuristic_separator(g, 0.5, "bfs_layering").size)
print("grid n:", ns)
print("separator:", seps)
print(f"log-log slope {fit_exponent(ns, seps).c:.3f}")

# %% [markdown]
# The sampled profile of a single large grid recovers the same exponent
# from induced subgraphs.

# %%
prof = separability_profile(make_grid(2, 40).graph, 0.5, samples_per_r=3, seed=0)
print(prof.max_by_r())
print(f"fitted c = {prof.fitted_c:.2f}  [{prof.fit.low:.2f}, {prof.fit.high:.2f}]")

# %% [markdown]
# {7,3} patches with a geodesic sweep cut.

# %%
for rings in range(1, 7):
    eg = make_hyperbolic_patch(7, 3, rings)
    s = geometric_cut_separator(eg).size
    print(f"rings={rings} n={eg.graph.n:5d} s={s:2d} s/ln n={s / math.log(eg.graph.n):.2f}")

# %% [markdown]
# A random 3-regular graph. Its separator is several times the grid's at
# the same size, and the spectral gap certifies expansion.

# %%
exp = make_random_regular(3, 512, seed=1)
grid = make_grid(2, 23).graph
print("expander:", heuristic_separator(exp, 0.5, "bfs_layering").size,
      "grid:", heuristic_separator(grid, 0.5, "bfs_layering").size)
h_upper, h_lower = cheeger_estimate(exp)
print(f"Cheeger constant in [{h_lower:.3f}, {h_upper:.3f}]")
