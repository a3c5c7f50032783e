"""Response-function models for a single CUBIC congestion-control flow.

Submodules:

* ``core_model``: protocol parameters and window growth laws
* ``fluid_model``: deterministic periodic-loss model
* ``limit_chain``: small-``p`` limiting Markov chain and Monte-Carlo estimates
* ``packet_sim``: RTT-level simulation with random packet drops
* ``response``: closed-form response functions and comparison tables
* ``cli``: command-line front end
"""

from .core_model import CubicParams, NetworkPath

__version__ = "0.1.0"

__all__ = ["CubicParams", "NetworkPath", "__version__"]
