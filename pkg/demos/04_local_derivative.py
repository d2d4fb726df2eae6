"""Riemann-Liouville counterexample and the local fractional derivative."""

# %%
import math

from fracvel import CounterexampleH, DeRham, Power, QuadratureConfig
from fracvel.lfd import equivalence_report, kg_lfd, rl_derivative, rl_integral

alpha = 0.6
h = CounterexampleH(alpha)

# %% I^(1-alpha) h is the constant Gamma(alpha), so D^alpha h vanishes
for x in (0.25, 0.5, 1.0):
    print(f"x={x}: I h = {rl_integral(h, 0.0, x, 1 - alpha):.10f}  D h = {rl_derivative(h, 0.0, x, alpha):+.2e}")
print("Gamma(0.6) =", math.gamma(alpha))

# %% ...while x^(2 alpha - 1), suitably scaled, is mapped onto h
k = Power(2 * alpha - 1, math.gamma(alpha) / math.gamma(2 * alpha))
for x in (0.25, 0.5):
    print(f"x={x}: D k = {rl_derivative(k, 0.0, x, alpha):.8f}  h(x) = {h(x):.8f}")

# %% The local derivative is Gamma(1 + beta) times the velocity
rep = equivalence_report(Power(0.5), 0.0, 0.5)
print("sqrt: velocity", rep.velocity.value, "LFD", rep.lfd.value, "ratio", rep.gamma_ratio)
print("x^2 at 0:", kg_lfd(Power(2.0), 0.0, 0.5).classification)

# %% For De Rham's function the ratio is only approximately Gamma(1.5)
rep = equivalence_report(DeRham(2**-0.5), 0.5, 0.5, q=QuadratureConfig(rtol=1e-4))
print(f"De Rham at 1/2: ratio {rep.gamma_ratio:.4f} vs Gamma(1.5) = {math.gamma(1.5):.4f}")
