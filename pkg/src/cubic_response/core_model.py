"""Protocol constants and the window-growth laws of TCP CUBIC.

Two window conventions coexist here and must not be mixed:

* :func:`cubic_window` takes the *pre-loss* window ``w0`` (the plateau), so
  the trajectory starts at ``(1 - beta) * w0``.
* :func:`k_offset` and :func:`rtt_window_sequence` take the *post-loss*
  window ``x0``, whose plateau is ``x0 / (1 - beta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

# guards floor() against values like 6.999999999999 that are 7 analytically
FLOOR_EPS = 1e-9


def cbrt(x: float) -> float:
    """Real cube root, defined for negative arguments."""
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


@dataclass(frozen=True)
class CubicParams:
    """Growth scale ``c`` and multiplicative back-off ``beta``."""

    c: float = 0.4
    beta: float = 0.3

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c!r}")
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta!r}")


@dataclass(frozen=True)
class NetworkPath:
    """Round-trip time (s), per-packet drop probability and optional window cap."""

    rtt: float
    drop_prob: float
    w_max: Optional[int] = None

    def __post_init__(self):
        if not self.rtt > 0:
            raise ValueError(f"rtt must be positive, got {self.rtt!r}")
        if not 0 < self.drop_prob < 1:
            raise ValueError(f"drop_prob must lie in (0, 1), got {self.drop_prob!r}")
        if self.w_max is not None and self.w_max < 1:
            raise ValueError(f"w_max must be >= 1, got {self.w_max!r}")


def cubic_window(t: float, w0: float, params: CubicParams) -> float:
    """Cubic window ``t`` seconds after a loss that hit pre-loss window ``w0``."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t!r}")
    if w0 < 1:
        raise ValueError(f"w0 must be >= 1, got {w0!r}")
    plateau_time = (params.beta * w0 / params.c) ** (1.0 / 3.0)
    return params.c * (t - plateau_time) ** 3 + w0


def reno_window(t: float, w0: float, params: CubicParams, rtt: float) -> float:
    """Reno-equivalent window used as the floor of CUBIC growth."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t!r}")
    if w0 < 1:
        raise ValueError(f"w0 must be >= 1, got {w0!r}")
    if not rtt > 0:
        raise ValueError(f"rtt must be positive, got {rtt!r}")
    return w0 * (1 - params.beta) + reno_slope(params) * (t / rtt)


def reno_slope(params: CubicParams) -> float:
    """Reno-mode additive increase per RTT, ``3 beta / (2 - beta)``."""
    return 3 * params.beta / (2 - params.beta)


def k_offset(x0: float, params: CubicParams) -> float:
    """Seconds from a loss until the cubic returns to its plateau.

    ``x0`` is the window *after* back-off.
    """
    if x0 < 0:
        raise ValueError(f"x0 must be non-negative, got {x0!r}")
    b = params.beta
    return (b * x0 / ((1 - b) * params.c)) ** (1.0 / 3.0)


def rtt_window_sequence(
    x0: int,
    params: CubicParams,
    rtt: float,
    n: int,
    w_max: Optional[int] = None,
) -> np.ndarray:
    """Integer windows ``[x_1, ..., x_n]`` at the end of each loss-free RTT.

    ``x_i = floor(c (i R - K)^3 + x0 / (1 - beta))`` with ``K = k_offset(x0)``.
    Values below one packet are clamped to 1, values above ``w_max`` to
    ``w_max``.
    """
    if x0 < 1:
        raise ValueError(f"x0 must be >= 1, got {x0!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    i = np.arange(1, n + 1, dtype=float)
    raw = _raw_windows(i, x0, params, rtt)
    w = np.floor(raw + FLOOR_EPS)
    w = np.maximum(w, 1.0)
    if w_max is not None:
        w = np.minimum(w, float(w_max))
    return w.astype(np.int64)


def _raw_windows(i, x0, params: CubicParams, rtt: float):
    k = k_offset(x0, params)
    return params.c * (i * rtt - k) ** 3 + x0 / (1 - params.beta)
