"""Refining a fractional increment: constant coefficients do not survive.

One step of length ``eps`` contributes ``B eps**beta``. Split into ``N``
steps with the same ``B`` it contributes ``N**(1-beta)`` times as much, so
a consistent path needs a coefficient that keeps changing sign.
"""

# %%
from fracvel.langevin import PathSpec, generate_path, partition_scaling_check, path_holder_exponent, step_scaling_exponent

for N in (4, 16, 64):
    const = partition_scaling_check(1.0, 0.5, N)
    alt = partition_scaling_check(1.0, 0.5, N, "alternating")
    print(f"N={N:3d}: constant ratio {const.ratio:g}, alternating ratio {alt.ratio:g}")

# %% Lag regression on single paths
n = 1 << 16
for mode in ("alternating", "random_sign", "constant"):
    p = generate_path(PathSpec(0.4, n, 1 / n, oscillation=mode, seed=1))
    print(f"{mode:>12}: lag exponent {path_holder_exponent(p):.3f}")

# %% The size of one step scales with dt**beta
print("single-step exponent:", step_scaling_exponent(PathSpec(0.4, 1, 0.01)))
