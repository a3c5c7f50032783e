"""Closed-form response functions and comparison tables.

Every mean-window formula here has the shape
``max(a (R/p)^(3/4), r / sqrt(p))``: a CUBIC term and a Reno floor.
The coefficient ``a`` is injected. Defaults come from ``data/calibration.json``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, Sequence

from .core_model import CubicParams, NetworkPath
from .fluid_model import fluid_coefficient

RENO_COEFFICIENT = 1.31
METHODS = ("det_fluid", "approx_markov", "packet_sim")


@lru_cache(maxsize=None)
def calibration() -> dict:
    """Contents of the bundled calibration file."""
    text = resources.files("cubic_response").joinpath("data/calibration.json").read_text()
    return json.loads(text)


def default_coefficient(params: CubicParams, source: str = "reference") -> float:
    """Response coefficient for ``params`` at ``R = 1``.

    ``source="reference"`` prefers the reference value and falls back to the
    limit-chain estimate; ``source="limit_chain"`` uses the estimate only.
    Parameters absent from the calibration file are estimated on the fly.
    """
    if source not in ("reference", "limit_chain"):
        raise ValueError(f"unknown coefficient source {source!r}")
    for entry in calibration()["coefficients"]:
        if math.isclose(entry["c"], params.c) and math.isclose(entry["beta"], params.beta):
            if source == "reference" and entry.get("reference") is not None:
                return entry["reference"]
            return entry["limit_chain"]
    from .limit_chain import GbarLaw, response_coefficient

    return response_coefficient(GbarLaw(params, 1.0))


@dataclass(frozen=True)
class ResponseInputs:
    params: CubicParams
    rtt_or_mean_rtt: float
    drop_prob: float
    coefficient: Optional[float] = None
    reno_coefficient: float = RENO_COEFFICIENT

    def __post_init__(self):
        NetworkPath(self.rtt_or_mean_rtt, self.drop_prob)
        if self.coefficient is None:
            object.__setattr__(self, "coefficient", default_coefficient(self.params))
        if not self.coefficient > 0:
            raise ValueError("coefficient must be positive")
        if not self.reno_coefficient > 0:
            raise ValueError("reno_coefficient must be positive")


def _max_form(a: float, r: float, rtt: float, p: float) -> float:
    return max(a * (rtt / p) ** 0.75, r / math.sqrt(p))


def mean_window_approx(inp: ResponseInputs) -> float:
    """``max(a (R/p)^(3/4), r / sqrt(p))`` with the limit-chain coefficient."""
    return _max_form(inp.coefficient, inp.reno_coefficient, inp.rtt_or_mean_rtt, inp.drop_prob)


def mean_window_det(params: CubicParams, rtt: float, p: float, reno_coefficient: float = RENO_COEFFICIENT) -> float:
    """Fluid-model window with the Reno floor."""
    NetworkPath(rtt, p)
    return _max_form(fluid_coefficient(params), reno_coefficient, rtt, p)


def mean_window_beta02(rtt: float, p: float) -> float:
    """Approximate mean window for the ``beta = 0.2`` variant of the protocol."""
    return mean_window_approx(ResponseInputs(CubicParams(0.4, 0.2), rtt, p, coefficient=1.54))


def mean_window_multiflow(inp: ResponseInputs) -> float:
    """Mean window when the RTT is random; ``inp.rtt_or_mean_rtt`` is ``E[R]``.

    ``E[R]`` comes from an external queueing model.
    """
    return mean_window_approx(inp)


def goodput(mean_window: float, rtt: float, drop_prob: float = 0.0) -> float:
    """Delivered packets per second, ``(1 - drop_prob) * mean_window / rtt``.

    With the default ``drop_prob=0`` this is the plain throughput ``W / R``.
    Passing the drop rate discounts the packets that are lost, which is how
    the reference goodput table relates to the window table.
    """
    if not rtt > 0:
        raise ValueError(f"rtt must be positive, got {rtt!r}")
    if not 0 <= drop_prob < 1:
        raise ValueError(f"drop_prob must lie in [0, 1), got {drop_prob!r}")
    return (1 - drop_prob) * mean_window / rtt


def reno_crossover(coefficient: float, rtt: float, reno_coefficient: float = RENO_COEFFICIENT) -> float:
    """Drop rate above which the Reno term of the max wins."""
    return coefficient ** 4 * rtt ** 3 / reno_coefficient ** 4


def generate_table(
    p_list: Sequence[float],
    rtt_list: Sequence[float],
    methods: Iterable[str] = ("det_fluid", "approx_markov"),
    params: CubicParams = CubicParams(),
    coefficient: Optional[float] = None,
    reno_coefficient: float = RENO_COEFFICIENT,
    quantity: str = "window",
    sim_defaults: Optional[dict] = None,
    threads: Optional[int] = None,
) -> list[dict]:
    """One row per ``(p, R)``, sorted by ``p`` then ``R``, both descending.

    ``quantity`` is ``"window"`` (packets) or ``"goodput"`` (delivered
    packets/s, ``(1 - p) W / R``).
    The ``packet_sim`` column runs :func:`~cubic_response.packet_sim.simulate`
    with Reno mode on. ``sim_defaults`` may set ``n_rtts``, ``seed`` and
    ``w_max``.
    """
    methods = list(methods)
    if not p_list or not rtt_list:
        raise ValueError("p_list and rtt_list must be non-empty")
    if not methods:
        raise ValueError("at least one method is required")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; expected one of {METHODS}")
    if quantity not in ("window", "goodput"):
        raise ValueError(f"quantity must be 'window' or 'goodput', got {quantity!r}")
    if coefficient is None:
        coefficient = default_coefficient(params)

    cells = [(p, r) for p in sorted(set(p_list), reverse=True) for r in sorted(set(rtt_list), reverse=True)]
    for p, r in cells:
        NetworkPath(r, p)

    sim_values = {}
    if "packet_sim" in methods:
        sim_values = _simulate_cells(params, cells, sim_defaults or {}, threads)

    rows = []
    for p, r in cells:
        row = {"p": p, "R": r}
        for m in methods:
            if m == "det_fluid":
                w = mean_window_det(params, r, p, reno_coefficient)
            elif m == "approx_markov":
                w = mean_window_approx(ResponseInputs(params, r, p, coefficient, reno_coefficient))
            else:
                w = sim_values[(p, r)]
            row[m] = goodput(w, r, p) if quantity == "goodput" else w
        rows.append(row)
    return rows


def _simulate_cells(params, cells, sim_defaults, threads):
    from .packet_sim import SimConfig, simulate

    base = SimConfig(
        params,
        NetworkPath(1.0, 0.5),
        n_rtts=int(sim_defaults.get("n_rtts", 10 ** 6)),
        seed=int(sim_defaults.get("seed", 42)),
        reno_mode=True,
        record_epochs=False,
    )
    w_max = sim_defaults.get("w_max")

    def one(cell):
        p, r = cell
        return simulate(replace(base, path=NetworkPath(r, p, w_max))).mean_window

    with ThreadPoolExecutor(max_workers=threads) as pool:
        values = list(pool.map(one, cells))
    return dict(zip(cells, values))


def _fmt(value, sig_digits):
    if isinstance(value, float) and sig_digits is not None:
        return f"{value:.{sig_digits}g}"
    return repr(value) if isinstance(value, float) else str(value)


def table_to_csv(rows: list[dict], sig_digits: Optional[int] = None) -> str:
    """CSV text with header ``p,R,<methods...>``.

    Floats are written as shortest round-trip decimals unless ``sig_digits``
    is given.
    """
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    columns = list(rows[0])
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c], sig_digits) for c in columns])
    return buf.getvalue()


def table_to_json(rows: list[dict]) -> str:
    return json.dumps(rows)
