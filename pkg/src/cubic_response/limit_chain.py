"""Scaling limit of the random-loss model as the drop rate goes to zero.

With windows scaled by ``p^(3/4)`` and times (in RTTs) by ``p^(1/4)``, the
post-loss window process converges to a Markov chain ``V_{n+1} =
vbar_step(V_n, G_n)``, where ``G_n`` given ``V_n = x`` has survival function
``exp(-f(x, y))``. The stationary mean of ``G`` gives the response coefficient
``E[W] ~ coefficient * p^(-3/4)``.

Two exponents are available. ``"printed"`` is the closed form with a linear
``x y`` term. ``"derived"`` replaces it with ``x y / (1 - beta)``. The printed
form is the default because it is the one that integrates the limiting
window path exactly and reproduces ``E[G] = 0.7690`` at ``C=0.4, beta=0.3,
R=1``. See ``calibration.json``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import _rng
from ._roots import expand_bracket, solve_increasing, solve_increasing_array
from .core_model import CubicParams

EXPONENTS = ("printed", "derived")
SAMPLE_TOL = 1e-10
MONOTONE_TOL = 1e-12
DEFAULT_BURN_IN = 250


@dataclass(frozen=True)
class GbarLaw:
    """Limit law of the scaled inter-loss time for protocol ``params`` and RTT ``rtt``."""

    params: CubicParams
    rtt: float = 1.0
    exponent: str = "printed"

    def __post_init__(self):
        if not self.rtt > 0:
            raise ValueError(f"rtt must be positive, got {self.rtt!r}")
        if self.exponent not in EXPONENTS:
            raise ValueError(f"exponent must be one of {EXPONENTS}, got {self.exponent!r}")

    @property
    def _coefs(self):
        c, b, r = self.params.c, self.params.beta, self.rtt
        lin = 1.0 if self.exponent == "printed" else 1.0 / (1 - b)
        cube = (b * c ** 2 / (1 - b)) ** (1.0 / 3.0) * r ** 2
        square = (b * c ** 0.5 / (1 - b)) ** (2.0 / 3.0) * 1.5 * r
        return lin, c * r ** 3 / 4, cube, square

    def exponent_value(self, x, y):
        """``f(x, y)`` with ``P(G_x >= y) = exp(-f(x, y))``."""
        lin, quart, cube, square = self._coefs
        r = np.cbrt(x)
        return lin * x * y + quart * y ** 4 - r * cube * y ** 3 + r * r * square * y ** 2

    def exponent_slope(self, x, y):
        """``d f / d y``."""
        lin, quart, cube, square = self._coefs
        r = np.cbrt(x)
        return lin * x + 4 * quart * y ** 3 - 3 * r * cube * y ** 2 + 2 * r * r * square * y


@dataclass(frozen=True)
class LimitChainEstimate:
    mean_gbar: float
    coefficient: float
    n_samples: int
    burn_in: int
    seed: int
    std_error: float
    v0: float = 0.0
    mean_v: float = float("nan")


def _check_nonneg(**kw):
    for name, val in kw.items():
        if np.any(np.asarray(val) < 0):
            raise ValueError(f"{name} must be non-negative")


def gbar_survival(law: GbarLaw, x, y):
    """``P(G_x >= y)``; accepts scalars or broadcastable arrays."""
    _check_nonneg(x=x, y=y)
    out = np.exp(-law.exponent_value(x, y))
    return float(out) if np.ndim(out) == 0 else out


def gbar_cdf(law: GbarLaw, x: float):
    """CDF of ``G_x`` as a callable, for goodness-of-fit tests."""
    return lambda y: 1.0 - np.exp(-law.exponent_value(x, np.maximum(y, 0.0)))


def gbar_sample(law: GbarLaw, x, u):
    """Inverse-transform draw: the ``y`` with ``gbar_survival(x, y) = u``.

    ``u`` may be a scalar or an array. Raises
    :class:`~cubic_response._roots.MonotonicityError` if the survival
    function is seen to increase inside the search bracket.
    """
    _check_nonneg(x=x)
    u_arr = np.asarray(u, dtype=float)
    if np.any((u_arr <= 0) | (u_arr >= 1)):
        raise ValueError("u must lie in the open interval (0, 1)")
    target = -np.log(u_arr)
    if u_arr.ndim == 0:
        x = float(x)
        t = float(target)

        def f(y):
            return law.exponent_value(x, y)

        def df(y):
            return law.exponent_slope(x, y)

        hi = expand_bracket(f, t)
        return solve_increasing(f, df, t, 0.0, hi, tol=SAMPLE_TOL, mono_tol=MONOTONE_TOL)

    xa = np.broadcast_to(np.asarray(x, dtype=float), target.shape)
    hi = np.ones_like(target)
    for _ in range(200):
        short = law.exponent_value(xa, hi) < target
        if not short.any():
            break
        hi = np.where(short, 2 * hi, hi)
    return solve_increasing_array(
        lambda y: law.exponent_value(xa, y),
        lambda y: law.exponent_slope(xa, y),
        target,
        0.0,
        hi,
        tol=SAMPLE_TOL,
        mono_tol=MONOTONE_TOL,
    )


def k_scaled(law: GbarLaw, v):
    b, c = law.params.beta, law.params.c
    return np.cbrt(b * v / ((1 - b) * c))


def vbar_step(law: GbarLaw, v, g):
    """Next scaled post-loss window after an inter-loss time ``g`` from ``v``."""
    b, c = law.params.beta, law.params.c
    return (1 - b) * c * (g * law.rtt - k_scaled(law, v)) ** 3 + v


def batch_means_se(samples: np.ndarray, n_batches: int | None = None) -> float:
    """Standard error of the mean of a correlated series by non-overlapping batch means."""
    n = len(samples)
    if n < 4:
        return float("nan") if n < 2 else float(np.std(samples, ddof=1) / math.sqrt(n))
    if n_batches is None:
        n_batches = max(2, int(math.sqrt(n)))
    size = n // n_batches
    means = samples[: size * n_batches].reshape(n_batches, size).mean(axis=1)
    return float(np.std(means, ddof=1) / math.sqrt(n_batches))


def run_chain(law: GbarLaw, n_steps: int, seed: int, v0: float = 0.0):
    """Run ``n_steps`` steps; return arrays ``(v, g)`` with ``v[i]`` the state before draw ``g[i]``.

    Step ``i`` uses uniform ``i`` of stream ``seed``.
    """
    if v0 < 0:
        raise ValueError(f"v0 must be non-negative, got {v0!r}")
    u = _rng.uniforms(seed, 0, n_steps)
    vs = np.empty(n_steps)
    gs = np.empty(n_steps)
    v = float(v0)
    for i in range(n_steps):
        g = gbar_sample(law, v, u[i])
        vs[i] = v
        gs[i] = g
        v = float(vbar_step(law, v, g))
    return vs, gs


def estimate_mean_gbar(
    law: GbarLaw,
    n: int = 10_000,
    burn_in: int = DEFAULT_BURN_IN,
    seed: int = 42,
    v0: float = 0.0,
) -> LimitChainEstimate:
    """Stationary mean of the scaled inter-loss time by a single long chain.

    The first ``burn_in`` draws are discarded and the next ``n`` averaged.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if burn_in < 0:
        raise ValueError(f"burn_in must be >= 0, got {burn_in!r}")
    vs, gs = run_chain(law, n + burn_in, seed, v0)
    kept = gs[burn_in:]
    mean = float(math.fsum(kept) / n)
    return LimitChainEstimate(
        mean_gbar=mean,
        coefficient=1.0 / mean,
        n_samples=n,
        burn_in=burn_in,
        seed=seed,
        std_error=batch_means_se(kept),
        v0=float(v0),
        mean_v=float(math.fsum(vs[burn_in:]) / n),
    )


def response_coefficient(law: GbarLaw, n: int = 10_000, burn_in: int = DEFAULT_BURN_IN, seed: int = 42) -> float:
    """``a`` in ``E[W] ~ a p^(-3/4)`` for this law's RTT."""
    return estimate_mean_gbar(law, n, burn_in, seed).coefficient


def _xstar_bracket(params: CubicParams) -> float:
    c, b = params.c, params.beta
    a = (b * c ** 0.5 / (1 - b)) ** (2.0 / 3.0)
    s = (b * c ** 2 / (1 - b)) ** (1.0 / 3.0)
    return (-a + math.sqrt(a * a + 4.0 / 3.0 * s)) ** 3 / 8


def bound_xstar_of_y(law: GbarLaw, y: float) -> float:
    """Scaled window ``x`` minimising the survival exponent at time ``y``."""
    if not y > 0:
        raise ValueError(f"y must be positive, got {y!r}")
    return law.rtt ** 3 * y ** 3 * _xstar_bracket(law.params)


def _gamma_at(params: CubicParams, y: float) -> float:
    law = GbarLaw(params, 1.0)
    x = bound_xstar_of_y(law, y)
    return float(law.exponent_value(x, y)) / y ** 4


def gamma_constant(params: CubicParams) -> float:
    """``gamma`` with ``inf_x f(x, y) = gamma R^3 y^4`` (printed exponent)."""
    g = _gamma_at(params, 1.0)
    for y in (0.5, 2.0, 5.0):
        other = _gamma_at(params, y)
        if abs(other - g) > 1e-9 * abs(g):
            raise ArithmeticError(f"gamma not constant in y: {g!r} vs {other!r} at y={y}")
    return g


def h_bound(law: GbarLaw, y):
    """Envelope ``sup_x P(G_x >= y) = exp(-gamma R^3 y^4)``."""
    _check_nonneg(y=y)
    gamma = gamma_constant(law.params)
    out = np.exp(-gamma * law.rtt ** 3 * np.asarray(y, dtype=float) ** 4)
    return float(out) if np.ndim(out) == 0 else out


def brute_force_xstar(law: GbarLaw, y: float) -> float:
    """Numerical ``argmin_x f(x, y)``; an oracle for :func:`bound_xstar_of_y`."""
    # substitute x = t^3 so the objective is a smooth cubic in t
    res = minimize_scalar(
        lambda t: law.exponent_value(t ** 3, y),
        bounds=(0.0, 2.0 * law.rtt * y * (1.0 + law.params.c)),
        method="bounded",
        options={"xatol": 1e-13 * max(1.0, y)},
    )
    return float(res.x) ** 3
