# %% [markdown]
# # Exact, constant-factor and (1+eps) solvers side by side
#
# The exact solver is roughly quadratic.  The constant-factor approximation
# is near-linear, and the approximation scheme refines it to any accuracy eps.
# On moderate inputs we can compare all three against the exact width.

# %%
import time

from vwidth import (AnchorMode, PlugMode, approx_vshape, gen_instance, solve_exact,
                    solve_ptas, widths)

P = gen_instance("uniform", {"n": 400}, seed=11)

t0 = time.perf_counter()
w_opt = solve_exact(P).width
print(f"exact       {w_opt:.5f}   {time.perf_counter() - t0:6.2f} s")

# %%
t0 = time.perf_counter()
v, g = approx_vshape(P, PlugMode.HEURISTIC)
print(f"approx      {widths(v)[2]:.5f}   {time.perf_counter() - t0:6.2f} s   ratio {widths(v)[2] / w_opt:.3f}")

# %% [markdown]
# With the heuristic plug the approximation has no proven factor (`g` is
# None); on small inputs `PlugMode.EXACT_SMALL` gives a proven one.

# %%
print("guarantee:", g)

# %%
for eps in (0.5, 0.1):
    t0 = time.perf_counter()
    rep = solve_ptas(P, eps, anchor_mode=AnchorMode.DIAMETRAL)
    dt = time.perf_counter() - t0
    print(f"ptas {eps:<4}   {rep.width:.5f}   {dt:6.2f} s   ratio {rep.width / w_opt:.4f}")

# %% [markdown]
# Uniform points are the hard case for a V-shape (there is no corner to find),
# so the widths are large and the ratios tend to sit close to 1.  On a noisy
# corner with many points only the approximations stay cheap:

# %%
Q = gen_instance("noisy_corner", {"n": 50_000, "sigma": 0.01}, seed=2)
t0 = time.perf_counter()
rep = solve_ptas(Q, 0.1, anchor_mode=AnchorMode.DIAMETRAL)
print(f"50k points: width {rep.width:.5f} in {time.perf_counter() - t0:.1f} s")
