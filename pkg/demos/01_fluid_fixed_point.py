"""
Deterministic losses: fixed point and the slow road to it
==========================================================

One packet in every 1/p is lost. Between losses the window follows the
cubic law, and the pre-loss window ``x`` is mapped to the next one by
``loss_map``. This script prints the closed forms at the headline setting,
then follows a few orbits of the map.
"""

import numpy as np

from cubic_response.core_model import CubicParams, NetworkPath
from cubic_response.fluid_model import fixed_point, iterate_loss_map, loss_map, solve

params = CubicParams(c=0.4, beta=0.3)
path = NetworkPath(rtt=1.0, drop_prob=0.01)

# closed forms: x*, the period tau and the time-average window
sol = solve(params, path)
print(f"x* = {sol.x_star:.4f} packets, tau = {sol.tau:.4f} s, E[W] = {sol.mean_window:.4f} packets")
print(f"packets per period E[W] tau / R = {sol.mean_window * sol.tau / path.rtt:.6f}  (1/p = {1 / path.drop_prob:g})")

# orbits from below and above the fixed point
x_star = fixed_point(params, path)
starts = [1.0, 0.5 * x_star, 2 * x_star, 100.0]
orbits = np.array([iterate_loss_map(params, path, x0, 2000) for x0 in starts])
print("\nk     " + "  ".join(f"x0={x0:8.3f}" for x0 in starts))
for k in (0, 1, 2, 5, 10, 50, 200, 1000, 2000):
    print(f"{k:<5d} " + "  ".join(f"{v:11.4f}" for v in orbits[:, k]))

# the map touches the diagonal with slope one at x*, so the distance to x*
# shrinks only like k^(-1/2) rather than geometrically
h = 1e-3
slope = (loss_map(params, path, x_star + h) - loss_map(params, path, x_star - h)) / (2 * h)
print(f"\nslope of the loss map at x*: {slope:.8f}")
err = np.abs(orbits[-1] - x_star)
print(f"|x_k - x*| * sqrt(k) from x0=100 at k=500, 2000: "
      f"{np.abs(orbits[-1, 500] - x_star) * np.sqrt(500):.3f}, {err[-1] * np.sqrt(2000):.3f}")
