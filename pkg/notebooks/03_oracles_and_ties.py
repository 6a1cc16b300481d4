# %% [markdown]
# # Checking the solver, and inputs with many optima
#
# Two brute-force oracles ship with the package.  One enumerates every strip
# pair spanned by input points; the other scans arm directions on a 0.1
# degree grid.  They are slow and meant for a dozen points at most.

# %%
import numpy as np

from vwidth import brute_force_optimum, gen_instance, grid_search_optimum, solve_exact

for seed in range(5):
    P = gen_instance("uniform", {"n": 8}, seed)
    o = brute_force_optimum(P)
    print(seed, round(solve_exact(P).width, 9), round(o.width, 9), round(grid_search_optimum(P), 6))

# %% [markdown]
# The grid oracle can come out *below* the exact width.  Take the unit
# square with its center: two parallel strips of width 0.5 cover it, and V
# shapes with almost parallel arms approach that value without reaching it.
# The narrowest actual V-shape is wider.

# %%
sq = np.array([(0, 0), (1, 0), (0, 1), (1, 1), (0.5, 0.5)], float)
o = brute_force_optimum(sq)
print("best V width   ", round(o.width, 6))
print("parallel limit ", round(o.parallel_limit, 6))
print("grid oracle    ", round(grid_search_optimum(sq), 6))

# %% [markdown]
# Two regular polygons far apart, with guard points above and below, give
# many tied optima once the polygons have enough sides.

# %%
for k in (4, 8, 12, 16, 20):
    P = gen_instance("two_kgon", {"k": k})
    rep = solve_exact(P, enumerate_optima=True)
    print(f"k={k:<3} n={len(P):<3} width {rep.width:.5f}  optima {len(rep.optima)}")
