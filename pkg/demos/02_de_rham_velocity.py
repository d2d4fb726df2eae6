"""Velocities of De Rham's singular function at dyadic and non-dyadic points.

For ``a = 2**-1/2`` the critical order is 1/2. At a dyadic point the
velocity equals ``(2**beta - 1)**s`` with ``s`` the binary digit sum; at
other points it vanishes.
"""

# %%
import numpy as np

from fracvel import DeRham, EstimatorSchedule, estimate_velocity
from fracvel.dyadic import digit_sum
from fracvel.ifs import critical_order, derham_velocity_closed_form

a = 2**-0.5
beta = critical_order(a)
R = DeRham(a)
sched = EstimatorSchedule(eps0=2.0**-6, ratio=0.5, levels=19)

# %% Brute force against both exponent conventions
print(f"{'x':>8} {'s':>2} {'numeric':>10} {'(..)^s':>10} {'(..)^(s-1)':>10}")
for x in (0.5, 0.75, 0.625, 0.8125, 0.375):
    num = estimate_velocity(R, x, beta, "forward", sched).value
    cs = derham_velocity_closed_form(a, x, beta, convention="s").value
    cs1 = derham_velocity_closed_form(a, x, beta, convention="s-1").value
    print(f"{x:8.4f} {digit_sum(x):2d} {num:10.6f} {cs:10.6f} {cs1:10.6f}")

# %% Away from dyadic points the velocity vanishes
grid = (np.arange(256) + 1 / 3) / 256
cls = [estimate_velocity(R, float(x), beta, "forward", sched).classification for x in grid]
print({c: cls.count(c) for c in set(cls)})

# %% Below and above the critical order
for b in (beta - 0.1, beta, beta + 0.1):
    print(f"beta={b:.2f}:", estimate_velocity(R, 0.75, b, "forward", sched).classification)
