"""
Packet-level randomness against the closed forms
=================================================

The RTT-level simulator drops each packet independently. Its long-run mean
window is compared with the fluid and approximate response functions, and
the scaled inter-loss time is compared with its small-p limit.
"""

from scipy import stats

from cubic_response.core_model import CubicParams
from cubic_response.limit_chain import GbarLaw, gbar_cdf, gbar_survival
from cubic_response.packet_sim import empirical_scaled_g, lattice_ks_distance
from cubic_response.response import generate_table, table_to_csv

params = CubicParams(0.4, 0.3)

# a small comparison table; the packet_sim column runs 2e6 RTTs per cell
rows = generate_table(
    [1e-2, 1e-3, 8e-5],
    [1.0, 0.1],
    methods=["det_fluid", "approx_markov", "packet_sim"],
    sim_defaults={"n_rtts": 2_000_000, "seed": 42},
)
print(table_to_csv(rows, sig_digits=5))

# p^(1/4) G approaches its limit law; the samples sit on a lattice of
# spacing p^(1/4), so the lattice distance is the meaningful statistic
law = GbarLaw(params, 1.0)
print("p       lattice  plain KS")
for p in (1e-2, 1e-3, 1e-4, 1e-5):
    y = empirical_scaled_g(params, 1.0, p, x=1.0, n_samples=100_000, seed=42)
    lat = lattice_ks_distance(y, p ** 0.25, lambda t: gbar_survival(law, 1.0, t))
    print(f"{p:<7g} {lat:.4f}   {stats.kstest(y, gbar_cdf(law, 1.0)).statistic:.4f}")
