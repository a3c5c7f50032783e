import csv
import io
import json
import math

import pytest
from hypothesis import given, strategies as st

from cubic_response.core_model import CubicParams, NetworkPath
from cubic_response.fluid_model import mean_window_fluid
from cubic_response.response import (
    ResponseInputs,
    calibration,
    default_coefficient,
    generate_table,
    goodput,
    mean_window_approx,
    mean_window_beta02,
    mean_window_det,
    mean_window_multiflow,
    reno_crossover,
    table_to_csv,
    table_to_json,
)

P = CubicParams(0.4, 0.3)


def test_calibration_file():
    cal = calibration()
    betas = {e["beta"] for e in cal["coefficients"]}
    assert betas == {0.3, 0.2}
    assert cal["exponent_check"]["default"] == "printed"


def test_default_coefficients():
    assert default_coefficient(P) == 1.3004
    assert default_coefficient(CubicParams(0.4, 0.2)) == 1.54
    assert default_coefficient(P, "limit_chain") == pytest.approx(1.3004, rel=0.02)
    with pytest.raises(ValueError):
        default_coefficient(P, "guess")


def test_inputs_validation():
    with pytest.raises(ValueError):
        ResponseInputs(P, 1.0, 0.01, coefficient=0.0)
    with pytest.raises(ValueError):
        ResponseInputs(P, 1.0, 0.01, reno_coefficient=-1.0)
    with pytest.raises(ValueError):
        ResponseInputs(P, 0.0, 0.01)
    assert ResponseInputs(P, 1.0, 0.01).coefficient == 1.3004


@pytest.mark.parametrize("p, rtt, expected", [(1e-2, 1, 41.19), (1e-2, 0.2, 13.10), (8e-5, 1, 1539.87)])
def test_approx_examples(p, rtt, expected):
    assert mean_window_approx(ResponseInputs(P, rtt, p)) == pytest.approx(expected, rel=0.015)


@pytest.mark.parametrize("p, rtt, expected", [(5e-4, 1, 315.17), (1e-3, 0.02, 41.43)])
def test_det_examples(p, rtt, expected):
    assert mean_window_det(P, rtt, p) == pytest.approx(expected, rel=0.005)


@pytest.mark.parametrize("p, rtt, expected", [(3e-3, 1, 120.12), (1e-2, 1, 48.69), (5e-3, 0.1, 18.53)])
def test_beta02_examples(p, rtt, expected):
    assert mean_window_beta02(rtt, p) == pytest.approx(expected, rel=0.005)


def test_goodput():
    assert goodput(12.969, 0.01) == pytest.approx(1296.9)
    assert goodput(41.19, 2.0) == pytest.approx(goodput(41.19, 1.0) / 2)
    with pytest.raises(ValueError):
        goodput(1.0, 0.0)


def test_goodput_discounts_lost_packets():
    w = mean_window_approx(ResponseInputs(P, 0.01, 1e-2))
    assert goodput(w, 0.01) == pytest.approx(1310.0)
    assert goodput(w, 0.01, 1e-2) == pytest.approx(1296.9, rel=1e-4)
    # the published 40.78 next to a 41.19 window is the same (1 - p) factor
    assert goodput(41.19, 1.0, 1e-2) == pytest.approx(40.78, abs=0.005)
    with pytest.raises(ValueError):
        goodput(1.0, 1.0, 1.0)


def test_multiflow():
    plain = ResponseInputs(P, 0.06, 0.01)
    assert mean_window_multiflow(plain) == mean_window_approx(plain)
    assert mean_window_multiflow(ResponseInputs(P, 0.6, 0.01)) == pytest.approx(1.3004 * 60 ** 0.75)
    assert mean_window_multiflow(ResponseInputs(P, 0.8, 0.01)) > mean_window_multiflow(ResponseInputs(P, 0.6, 0.01))


def test_crossover_switches_branch():
    for rtt in (0.02, 0.1, 0.2, 1.0):
        p_cross = reno_crossover(1.3004, rtt)
        assert 1.3004 * (rtt / p_cross) ** 0.75 == pytest.approx(1.31 / math.sqrt(p_cross), rel=1e-12)
        below = ResponseInputs(P, rtt, p_cross * 0.99) if p_cross < 1 else None
        if below is not None:
            assert mean_window_approx(below) > 1.31 / math.sqrt(p_cross * 0.99)
        if p_cross * 1.01 < 1:
            assert mean_window_approx(ResponseInputs(P, rtt, p_cross * 1.01)) == pytest.approx(
                1.31 / math.sqrt(p_cross * 1.01)
            )


@given(p=st.floats(1e-6, 0.9), rtt=st.floats(0.001, 5))
def test_approx_at_least_reno(p, rtt):
    assert mean_window_approx(ResponseInputs(P, rtt, p)) >= 1.31 / math.sqrt(p)


@given(p=st.floats(1e-6, 0.9), rtt=st.floats(0.001, 5))
def test_approx_above_det_on_cubic_branch(p, rtt):
    if 1.0538 * (rtt / p) ** 0.75 > 1.31 / math.sqrt(p):
        assert mean_window_approx(ResponseInputs(P, rtt, p)) > mean_window_det(P, rtt, p)


def test_table_layout_and_single_cell():
    rows = generate_table([1e-3, 1e-2], [0.1, 1.0])
    assert [(r["p"], r["R"]) for r in rows] == [(1e-2, 1.0), (1e-2, 0.1), (1e-3, 1.0), (1e-3, 0.1)]
    assert list(rows[0]) == ["p", "R", "det_fluid", "approx_markov"]
    (one,) = generate_table([5e-4], [0.2])
    assert one["det_fluid"] == mean_window_det(P, 0.2, 5e-4)
    assert one["approx_markov"] == mean_window_approx(ResponseInputs(P, 0.2, 5e-4))


def test_table_goodput():
    (row,) = generate_table([1e-2], [0.2], quantity="goodput")
    assert row["approx_markov"] == pytest.approx(0.99 * 13.1 / 0.2)


def test_table_validation():
    with pytest.raises(ValueError):
        generate_table([], [1.0])
    with pytest.raises(ValueError):
        generate_table([0.01], [])
    with pytest.raises(ValueError):
        generate_table([0.01], [1.0], methods=["ns2"])
    with pytest.raises(ValueError):
        generate_table([0.01], [1.0], methods=[])
    with pytest.raises(ValueError):
        generate_table([0.0], [1.0])
    with pytest.raises(ValueError):
        generate_table([0.01], [1.0], quantity="bytes")


def test_table_packet_sim_thread_independent():
    kw = dict(methods=["packet_sim"], sim_defaults={"n_rtts": 50_000, "seed": 4})
    a = generate_table([1e-2, 1e-3], [1.0, 0.1], threads=1, **kw)
    b = generate_table([1e-2, 1e-3], [1.0, 0.1], threads=4, **kw)
    assert a == b


def test_csv_round_trip():
    rows = generate_table([8e-5], [1.0, 0.01])
    text = table_to_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert text.splitlines()[0] == "p,R,det_fluid,approx_markov"
    assert float(parsed[0]["approx_markov"]) == rows[0]["approx_markov"]
    assert table_to_csv(rows, 4).splitlines()[1].split(",")[3] == "1537"
    assert table_to_csv([]) == ""


def test_json_round_trip():
    rows = generate_table([1e-2], [1.0])
    assert json.loads(table_to_json(rows)) == rows
