"""
The limiting Markov chain and the 1.3004 coefficient
=====================================================

As p goes to zero the scaled post-loss windows form a Markov chain whose
inter-loss times have an explicit survival function. Averaging those times
along one long chain gives E[G], and 1/E[G] is the coefficient of the
approximate response function ``E[W] ~ a (R/p)^(3/4)``.
"""

import numpy as np

from cubic_response.core_model import CubicParams
from cubic_response.limit_chain import GbarLaw, estimate_mean_gbar, run_chain

law = GbarLaw(CubicParams(0.4, 0.3), rtt=1.0)

# running averages from three starting states; after a few hundred steps
# the starting point no longer matters
print("n      " + "  ".join(f"v0={v0:<4}" for v0 in (0.0, 0.1, 2.0)))
runs = [run_chain(law, 10_000, seed=42, v0=v0)[1] for v0 in (0.0, 0.1, 2.0)]
running = [np.cumsum(g) / np.arange(1, g.size + 1) for g in runs]
for n in (10, 50, 250, 1000, 5000, 10_000):
    print(f"{n:<6d} " + "  ".join(f"{r[n - 1]:.4f} " for r in running))

est = estimate_mean_gbar(law, n=10_000, burn_in=250, seed=42)
print(f"\nE[G] = {est.mean_gbar:.4f} +/- {est.std_error:.4f}, coefficient = {est.coefficient:.4f}")

# the same estimate for the older beta = 0.2 setting
est02 = estimate_mean_gbar(GbarLaw(CubicParams(0.4, 0.2)), n=10_000, burn_in=250, seed=42)
print(f"beta = 0.2: coefficient = {est02.coefficient:.4f} +/- {est02.coefficient ** 2 * est02.std_error:.4f}")

# the alternative survival exponent, with x y / (1 - beta) in place of x y
alt = estimate_mean_gbar(GbarLaw(CubicParams(0.4, 0.3), exponent="derived"), n=10_000, seed=42)
print(f"alternative exponent: E[G] = {alt.mean_gbar:.4f}, coefficient = {alt.coefficient:.4f}")
