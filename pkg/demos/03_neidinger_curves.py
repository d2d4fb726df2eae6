"""Curve data for Neidinger's function and its fractional velocity.

Writes CSV files to ``demos/output`` for plotting elsewhere.
"""

# %%
from pathlib import Path

from fracvel.ifs import curve_rows, iterate_sup_differences, neidinger_velocity_rows
from fracvel.io import csv_text, curve_table

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

# %% Iterates at depths 2, 4 and 8 on 257 dyadic points
for depth in (2, 4, 8):
    header, rows = curve_table(curve_rows("neidinger", 0.3, depth, 256), "full")
    (out / f"neidinger_a0.3_n{depth}.csv").write_text(csv_text(header, rows))
    print(f"depth {depth}: N(1/2) = {rows[128][-1]:.4f}")

# %% Iterates of equal parity approach each other geometrically
diffs = iterate_sup_differences("neidinger", 0.3, list(range(2, 15, 2)), grid_level=16)
print("sup differences:", ", ".join(f"{d:.3e}" for d in diffs))
print("ratio per level:", ", ".join(f"{(b / a) ** 0.5:.4f}" for a, b in zip(diffs, diffs[1:])))

# %% Velocity of order 1/3 at level 9 on 513 points
beta = 1 / 3
header, rows = curve_table(neidinger_velocity_rows(2**-beta, beta, 9, 512), "full")
(out / "neidinger_velocity_beta1_3_n9.csv").write_text(csv_text(header, rows))
nonzero = sum(r[-1] != 0 for r in rows)
print(f"velocity: {nonzero} of {len(rows)} grid points nonzero, max {max(r[-1] for r in rows):.4f}")
