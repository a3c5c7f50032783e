"""Deterministic periodic-loss (fluid) model of a single CUBIC flow.

Windows are continuous and one loss occurs per ``1/p`` packets sent. Starting
from pre-loss window ``x`` the trajectory is ``cubic_window(t, x)``; the next
loss happens after ``tau_of_x(x)`` seconds at window ``loss_map(x)``. The map
has a unique fixed point ``x*`` and every orbit converges to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._roots import solve_increasing
from .core_model import CubicParams, NetworkPath, cubic_window

TAU_TOL = 1e-10


@dataclass(frozen=True)
class FluidSolution:
    x_star: float
    tau: float
    mean_window: float
    throughput: float


def fixed_point(params: CubicParams, path: NetworkPath) -> float:
    """Pre-loss window at which the loss map is stationary."""
    c, b = params.c, params.beta
    return (c / b) ** 0.25 * (4 / (4 - b) * path.rtt / path.drop_prob) ** 0.75


def mean_window_fluid(params: CubicParams, path: NetworkPath) -> float:
    """Time-average window of the periodic orbit, ``(C(4-b)/(4b) (R/p)^3)^(1/4)``."""
    c, b = params.c, params.beta
    return (c * (4 - b) / (4 * b) * (path.rtt / path.drop_prob) ** 3) ** 0.25


def fluid_coefficient(params: CubicParams) -> float:
    """Coefficient ``a`` in ``mean_window_fluid = a (R/p)^(3/4)``."""
    c, b = params.c, params.beta
    return (c * (4 - b) / (4 * b)) ** 0.25


def inter_loss_time(params: CubicParams, path: NetworkPath) -> float:
    """Period of the orbit through the fixed point (seconds)."""
    c, b = params.c, params.beta
    return (4 * b * path.rtt / ((4 - b) * c * path.drop_prob)) ** 0.25


def solve(params: CubicParams, path: NetworkPath) -> FluidSolution:
    mean = mean_window_fluid(params, path)
    return FluidSolution(
        x_star=fixed_point(params, path),
        tau=inter_loss_time(params, path),
        mean_window=mean,
        throughput=mean / path.rtt,
    )


def _plateau_time(x: float, params: CubicParams) -> float:
    return (params.beta * x / params.c) ** (1.0 / 3.0)


def packets_sent(params: CubicParams, x: float, tau: float) -> float:
    """``integral_0^tau cubic_window(u, x) du`` in closed form (packet-seconds)."""
    j = _plateau_time(x, params)
    return params.c / 4 * ((tau - j) ** 4 - j ** 4) + x * tau


def tau_of_x(params: CubicParams, path: NetworkPath, x: float) -> float:
    """Seconds needed to send ``1/p`` packets starting from pre-loss window ``x``."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x!r}")
    # trajectory minimum is at t = 0
    assert (1 - params.beta) * x > 0

    budget = path.rtt / path.drop_prob

    def sent(t):
        return packets_sent(params, x, t)

    def rate(t):
        return params.c * (t - _plateau_time(x, params)) ** 3 + x

    hi = 4 * inter_loss_time(params, path)
    while sent(hi) < budget:
        hi *= 2
    return solve_increasing(sent, rate, budget, 0.0, hi, tol=TAU_TOL)


def loss_map(params: CubicParams, path: NetworkPath, x: float) -> float:
    """Pre-loss window at the next loss given pre-loss window ``x`` at this one."""
    return cubic_window(tau_of_x(params, path, x), x, params)


def iterate_loss_map(params: CubicParams, path: NetworkPath, x0: float, k: int) -> list[float]:
    """Orbit ``[x0, L(x0), ..., L^k(x0)]`` of the loss map."""
    orbit = [float(x0)]
    for _ in range(k):
        orbit.append(loss_map(params, path, orbit[-1]))
    return orbit


def lemma5_check(k: float, x: float) -> bool:
    """Whether ``(1+x)^k - x^k < 1 + k x^(k-1)`` holds at ``(k, x)``."""
    if not 1 < k < 2:
        raise ValueError(f"k must lie in (1, 2), got {k!r}")
    if not x > 0:
        raise ValueError(f"x must be positive, got {x!r}")
    # x^k ((1 + 1/x)^k - 1) avoids cancellation at large x
    lhs = x ** k * math.expm1(k * math.log1p(1 / x))
    return lhs < 1 + k * x ** (k - 1)
