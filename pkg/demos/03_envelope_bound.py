"""
An envelope for the inter-loss survival function
=================================================

For every scaled window x, P(G_x >= y) stays below H(y) = exp(-gamma R^3 y^4).
The envelope touches the family at x*(y), which grows like y^3.
"""

import numpy as np

from cubic_response.core_model import CubicParams
from cubic_response.limit_chain import GbarLaw, bound_xstar_of_y, gamma_constant, gbar_survival, h_bound

params = CubicParams(0.4, 0.3)
law = GbarLaw(params, rtt=1.0)
print(f"gamma = {gamma_constant(params):.5f}")

# survival curves for three windows next to the envelope
print("\ny     H(y)    x=0     x=0.1   x=1     x*(y)")
for y in np.linspace(0, 4, 9):
    xs = bound_xstar_of_y(law, y) if y > 0 else 0.0
    cols = [h_bound(law, y)] + [gbar_survival(law, x, y) for x in (0.0, 0.1, 1.0)]
    print(f"{y:<5.1f} " + "  ".join(f"{c:.4f}" for c in cols) + f"  {xs:.5f}")

# check the ordering over a dense grid
xs = np.linspace(0, 100, 801)
ys = np.linspace(0, 5, 801)
gap = gbar_survival(law, xs[:, None], ys[None, :]) - h_bound(law, ys)[None, :]
print(f"\nlargest survival - H over x in [0, 100], y in [0, 5]: {gap.max():.2e}")
