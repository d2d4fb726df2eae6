"""One-sided fractional velocities of a square root.

Run with ``python3 demos/01_power_velocity.py``.
"""

# %% The forward velocity of sqrt(x) at 0 picks out the order 1/2
from fracvel import FractionalPowerSeries, estimate_velocity, basic_evaluation

root = FractionalPowerSeries.power(0.5)
for beta in (0.4, 0.5, 0.6):
    est = estimate_velocity(root, 0.0, beta)
    print(f"beta={beta}: {est.classification:>10}  value={est.value:.6g}  slope={est.fitted_slope:.4f}")

# %% From the left the series is flat, so the increment is identically zero
est = estimate_velocity(root, 0.0, 0.5, "backward")
print("backward:", est.classification, est.value)

# %% The derivative-based formula gives the same number
print("basic evaluation:", basic_evaluation(root, 0.0, 0.5).value)

# %% Adding a smooth term does not change the order-1/2 velocity
f = FractionalPowerSeries(1.0, ((2.0, 0.0, 0.5), (-3.0, 0.0, 1.0)))
print("1 + 2 sqrt(x) - 3x:", estimate_velocity(f, 0.0, 0.5).value)
