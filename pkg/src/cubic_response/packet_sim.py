"""RTT-granularity simulation of one CUBIC flow under independent packet drops.

State between RTTs is the post-loss window ``x0`` and the number ``d`` of
loss-free RTTs since that loss. In each RTT the flow sends ``w`` packets,
where ``w`` is the window ``d`` RTTs after the loss: ``x0`` itself in the
first RTT, then ``x_1, x_2, ...`` as given by
:func:`~cubic_response.core_model.rtt_window_sequence`. With
``test_incremented=True`` the window one RTT later is used instead. Each packet
is dropped independently with probability ``p``. One uniform per RTT is
turned into the index ``J`` of the first dropped packet, which is geometric.
The RTT has a loss iff ``J <= w``, which happens with probability
``1 - (1-p)^w``. On a loss the window backs off to ``max(1, floor((1-beta) w))``.

All ``w`` packets of a lossy RTT count as sent. The ``J`` packets up to and
including the first drop make up the loss cycle used for the
packets-per-loss statistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numba
import numpy as np

from . import _rng
from .core_model import FLOOR_EPS, CubicParams, NetworkPath, reno_slope, rtt_window_sequence

CHUNK = 1 << 20


@dataclass(frozen=True)
class SimConfig:
    params: CubicParams
    path: NetworkPath
    n_rtts: int
    seed: int = 42
    initial_window: int = 1
    reno_mode: bool = False
    test_incremented: bool = False
    record_epochs: bool = True

    def __post_init__(self):
        if self.n_rtts < 1:
            raise ValueError(f"n_rtts must be >= 1, got {self.n_rtts!r}")
        if self.initial_window < 1:
            raise ValueError(f"initial_window must be >= 1, got {self.initial_window!r}")


@dataclass(frozen=True)
class LossEpochRecord:
    v: int  # post-loss window
    g: int  # RTTs until the next loss, the lossy RTT included


@dataclass
class SimStats:
    mean_window: float
    goodput: float
    packets_sent: int
    losses: int
    cycle_packets: int
    max_window: int
    rtt: float
    epoch_v: np.ndarray = field(repr=False)
    epoch_g: np.ndarray = field(repr=False)

    @property
    def epochs(self) -> list[LossEpochRecord]:
        return [LossEpochRecord(int(v), int(g)) for v, g in zip(self.epoch_v, self.epoch_g)]

    @property
    def packets_per_loss(self) -> float:
        """Mean packets from one loss to the next, counting up to the first drop."""
        return self.cycle_packets / self.losses if self.losses else float("inf")

    def to_dict(self, include_epochs: bool = False) -> dict:
        out = {
            "mean_window": self.mean_window,
            "goodput": self.goodput,
            "packets_sent": self.packets_sent,
            "losses": self.losses,
            "cycle_packets": self.cycle_packets,
            "packets_per_loss": self.packets_per_loss,
            "max_window": self.max_window,
        }
        if include_epochs:
            out["epochs"] = [{"v": int(v), "g": int(g)} for v, g in zip(self.epoch_v, self.epoch_g)]
        return out


@numba.njit(cache=True, nogil=True)
def _window(x0, d, c, beta, rtt, reno, slope, w_max):
    k = (beta * x0 / ((1.0 - beta) * c)) ** (1.0 / 3.0)
    w = math.floor(c * (d * rtt - k) ** 3 + x0 / (1.0 - beta) + FLOOR_EPS)
    if reno:
        wr = math.floor(x0 + slope * d + FLOOR_EPS)
        if wr > w:
            w = wr
    if w < 1.0:
        w = 1.0
    if w_max > 0 and w > w_max:
        w = w_max
    return w


@numba.njit(cache=True, nogil=True)
def _run_chunk(u, state, acc, ep_v, ep_g, c, beta, rtt, log_q, reno, slope, w_max, shift, max_epochs):
    """Advance the flow over the RTTs in ``u``.

    ``state`` = [x0, d, cycle_packets_open]; ``acc`` = [sum_w, sent,
    losses, cycle_packets, max_w]. Stops early once ``acc[2]`` reaches
    ``max_epochs`` (when positive). Returns (RTTs used, epochs recorded).
    """
    x0 = state[0]
    d = state[1]
    open_cycle = state[2]
    n_ep = 0
    used = 0
    for i in range(u.shape[0]):
        w = _window(x0, d + shift, c, beta, rtt, reno, slope, w_max)
        acc[0] += w
        acc[1] += w
        if w > acc[4]:
            acc[4] = w
        used += 1
        j = math.floor(math.log(u[i]) / log_q) + 1.0
        if j <= w:
            acc[2] += 1
            acc[3] += open_cycle + j
            if ep_v.shape[0] > 0:
                ep_v[n_ep] = x0
                ep_g[n_ep] = d + 1
            n_ep += 1
            x0 = max(1.0, math.floor((1.0 - beta) * w + FLOOR_EPS))
            d = 0.0
            open_cycle = 0.0
            if max_epochs > 0 and acc[2] >= max_epochs:
                break
        else:
            d += 1.0
            open_cycle += w
    state[0] = x0
    state[1] = d
    state[2] = open_cycle
    return used, n_ep


def _kernel_args(params: CubicParams, path: NetworkPath, reno: bool, incremented: bool):
    return (
        params.c,
        params.beta,
        path.rtt,
        math.log1p(-path.drop_prob),
        reno,
        reno_slope(params),
        float(path.w_max or 0),
        1.0 if incremented else 0.0,
    )


def simulate(config: SimConfig) -> SimStats:
    """Run ``config.n_rtts`` RTTs and return time-average statistics."""
    p = config.path.drop_prob
    args = _kernel_args(config.params, config.path, config.reno_mode, config.test_incremented)
    state = np.array([float(config.initial_window), 0.0, 0.0])
    acc = np.zeros(5)
    vs, gs = [], []
    for start, u in _rng.uniforms_chunked(config.seed, config.n_rtts, CHUNK):
        size = len(u) if config.record_epochs else 0
        ep_v = np.empty(size)
        ep_g = np.empty(size)
        _, n_ep = _run_chunk(u, state, acc, ep_v, ep_g, *args, 0)
        if config.record_epochs:
            vs.append(ep_v[:n_ep].astype(np.int64))
            gs.append(ep_g[:n_ep].astype(np.int64))
    sent = int(acc[1])
    empty = np.empty(0, dtype=np.int64)
    return SimStats(
        mean_window=acc[0] / config.n_rtts,
        goodput=(1 - p) * sent / (config.n_rtts * config.path.rtt),
        packets_sent=sent,
        losses=int(acc[2]),
        cycle_packets=int(acc[3]),
        max_window=int(acc[4]),
        rtt=config.path.rtt,
        epoch_v=np.concatenate(vs) if vs else empty,
        epoch_g=np.concatenate(gs) if gs else empty,
    )


def scaled_start(x: float, p: float) -> int:
    """Unscaled post-loss window ``floor(x / p^(3/4))``, at least 1."""
    return max(1, int(math.floor(x / p ** 0.75 + FLOOR_EPS)))


def _packets_to_first_drop(u: np.ndarray, p: float) -> np.ndarray:
    return np.floor(np.log(u) / math.log1p(-p)) + 1.0


def first_losses(
    params: CubicParams,
    rtt: float,
    p: float,
    x0: int,
    u: np.ndarray,
    test_incremented: bool = False,
):
    """Independent loss-free runs from post-loss window ``x0``, one per entry of ``u``.

    Returns ``(g, w)``: the index of the first lossy RTT (>= 1) and the window
    sent in it.
    """
    need = _packets_to_first_drop(u, p)
    total = float(need.max())
    windows = np.array([] if test_incremented else [x0], dtype=np.int64)
    n = 64
    while windows.sum() < total:
        seq = rtt_window_sequence(x0, params, rtt, n)
        windows = seq if test_incremented else np.concatenate(([x0], seq))
        n *= 2
    cum = np.cumsum(windows)
    idx = np.searchsorted(cum, need, side="left")
    return idx + 1, windows[idx]


def empirical_scaled_g(
    params: CubicParams,
    rtt: float,
    p: float,
    x: float,
    n_samples: int,
    seed: int = 42,
    test_incremented: bool = False,
) -> np.ndarray:
    """``n_samples`` draws of ``p^(1/4) G`` started from ``floor(x / p^(3/4))``."""
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples!r}")
    if not x > p ** 0.75:
        raise ValueError("x must exceed p^(3/4)")
    u = _rng.uniforms(seed, 0, n_samples)
    g, _ = first_losses(params, rtt, p, scaled_start(x, p), u, test_incremented)
    return p ** 0.25 * g


def scaled_v_one_step(
    params: CubicParams,
    rtt: float,
    p: float,
    x0: float,
    n_runs: int,
    seed: int = 42,
    test_incremented: bool = False,
) -> np.ndarray:
    """``p^(3/4) V_1`` over ``n_runs`` independent runs from ``floor(x0 / p^(3/4))``."""
    u = _rng.uniforms(seed, 0, n_runs)
    _, w = first_losses(params, rtt, p, scaled_start(x0, p), u, test_incremented)
    v1 = np.maximum(1.0, np.floor((1 - params.beta) * w + FLOOR_EPS))
    return p ** 0.75 * v1


def scaled_v_trajectory(
    params: CubicParams,
    rtt: float,
    p: float,
    x0: float,
    n_epochs: int,
    seed: int = 42,
    test_incremented: bool = False,
    w_max: Optional[int] = None,
) -> np.ndarray:
    """Scaled post-loss windows ``p^(3/4) V_k`` for ``k = 1 .. n_epochs`` of one run."""
    if n_epochs < 1:
        raise ValueError(f"n_epochs must be >= 1, got {n_epochs!r}")
    path = NetworkPath(rtt, p, w_max)
    args = _kernel_args(params, path, False, test_incremented)
    state = np.array([float(scaled_start(x0, p)), 0.0, 0.0])
    acc = np.zeros(5)
    out = []
    start = 0
    while acc[2] < n_epochs:
        u = _rng.uniforms(seed, start, CHUNK)
        ep_v = np.empty(CHUNK)
        ep_g = np.empty(CHUNK)
        used, n_ep = _run_chunk(u, state, acc, ep_v, ep_g, *args, n_epochs)
        # epoch k records V_{k-1}; V_k is the next record's v or the live state
        out.append(ep_v[:n_ep])
        start += used
    v = np.concatenate(out + [state[:1]])[1 : n_epochs + 1]
    return p ** 0.75 * v


def lattice_ks_distance(scaled_g: np.ndarray, scale: float, survival) -> float:
    """Largest gap between empirical and model survival on the sample lattice.

    ``scaled_g`` holds ``scale * G`` with integer ``G >= 1``, where ``G`` is
    the index of the first lossy RTT. ``G > k`` means ``k`` RTTs passed without
    loss, so its empirical frequency is compared with ``survival(k * scale)``
    for every ``k`` from 0 up to the largest sample. Unlike the plain
    Kolmogorov-Smirnov statistic this does not charge the lattice spacing
    ``scale`` against the fit.
    """
    g = np.rint(np.asarray(scaled_g, dtype=float) / scale).astype(np.int64)
    if g.size == 0:
        raise ValueError("need at least one sample")
    counts = np.bincount(g)
    # number of samples with G > k, for k = 0 .. max(G)
    above = g.size - np.cumsum(counts)
    k = np.arange(counts.size)
    model = np.asarray(survival(k * scale), dtype=float)
    return float(np.max(np.abs(above / g.size - model)))
