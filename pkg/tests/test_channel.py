from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from uniprior.channel import (
    analytic_pavg,
    awgn,
    bit_error_prob,
    bsc,
    monte_carlo,
    prob_demand_error,
    rayleigh,
    sweep,
    sweep_csv,
)
from uniprior.code import decoding_profile, encode
from uniprior.errors import EmptyProfileError, InvalidParameterError
from uniprior.graph import InformationFlowGraph
from uniprior.trees import star


def brute_odd_flip_probability(l: int, p: float) -> float:
    total = 0.0
    for flips in itertools.product([0, 1], repeat=l):
        if sum(flips) % 2 == 1:
            total += math.prod(p if f else 1 - p for f in flips)
    return total


def test_bsc_identity():
    assert bit_error_prob(bsc(0.1)) == 0.1


def test_awgn_matches_quadrature_oracle():
    # Frozen from numeric integration of the Gaussian tail at 0 dB.
    assert bit_error_prob(awgn(0.0)) == pytest.approx(0.0786496035, abs=1e-9)


def test_rayleigh_matches_numeric_averaging():
    # Frozen from averaging the conditional bit error rate over the
    # exponential fading-power distribution at 10 dB.
    assert bit_error_prob(rayleigh(10.0)) == pytest.approx(0.0232687054, abs=1e-9)


def test_channel_validation():
    with pytest.raises(InvalidParameterError):
        bsc(0.5)
    with pytest.raises(InvalidParameterError):
        bsc(-0.01)
    with pytest.raises(InvalidParameterError):
        awgn(float("nan"))


def test_demand_error_examples():
    assert prob_demand_error(1, 0.1) == pytest.approx(0.1)
    assert prob_demand_error(2, 0.1) == pytest.approx(2 * 0.1 * 0.9)
    assert prob_demand_error(3, 0.1) == pytest.approx(0.244)


def test_odd_sum_identity_grid():
    for l in range(1, 11):
        for p in np.arange(0.01, 0.50, 0.02):
            assert prob_demand_error(l, float(p)) == pytest.approx(
                brute_odd_flip_probability(l, float(p)), abs=1e-12
            )


def test_demand_error_validation():
    with pytest.raises(InvalidParameterError):
        prob_demand_error(0, 0.1)
    with pytest.raises(InvalidParameterError):
        prob_demand_error(2, 0.6)


def test_analytic_pavg_fix_a(fix_a):
    profile = decoding_profile(fix_a, star(fix_a, 2))
    assert analytic_pavg(profile, 0.1) == pytest.approx(0.1266667, abs=1e-6)


def test_analytic_pavg_all_single():
    g = InformationFlowGraph.from_arcs(2, [(1, 2), (2, 1)])
    profile = decoding_profile(g, star(g, 1))
    assert analytic_pavg(profile, 0.23) == pytest.approx(0.23)


def test_analytic_pavg_empty():
    g = InformationFlowGraph(2, frozenset())
    profile = decoding_profile(g, star(g, 1))
    with pytest.raises(EmptyProfileError):
        analytic_pavg(profile, 0.1)


def test_analytic_monotone_in_total_tx(fix_a):
    for p in (0.05, 0.2, 0.4):
        values = []
        for head in (2, 1, 4):  # totals 8, 9, 10
            profile = decoding_profile(fix_a, star(fix_a, head))
            values.append(analytic_pavg(profile, p))
        assert values[0] < values[1] < values[2]


def test_monte_carlo_seed_determinism(fix_a):
    code = encode(star(fix_a, 2))
    a = monte_carlo(fix_a, code, bsc(0.1), 20_000, seed=42)
    b = monte_carlo(fix_a, code, bsc(0.1), 20_000, seed=42)
    assert a == b
    c = monte_carlo(fix_a, code, bsc(0.1), 20_000, seed=43)
    assert c.mc_estimate != a.mc_estimate


def test_monte_carlo_worker_count_invariance(fix_a, monkeypatch):
    # The block layout fixes every stream, so the thread cap must not
    # change any digit of the result.
    import uniprior.channel as channel

    code = encode(star(fix_a, 2))
    monkeypatch.setattr(channel, "_BLOCK", 1_024)
    split = monte_carlo(fix_a, code, bsc(0.1), 5_000, seed=9)
    monkeypatch.setenv("IC_THREADS", "4")
    threaded = monte_carlo(fix_a, code, bsc(0.1), 5_000, seed=9)
    assert threaded == split


def test_monte_carlo_zero_noise(fix_a):
    code = encode(star(fix_a, 2))
    res = monte_carlo(fix_a, code, bsc(0.0), 10_000, seed=1)
    assert res.mc_estimate == 0.0


def test_monte_carlo_agrees_with_analytic(fix_a):
    code = encode(star(fix_a, 2))
    for ch in (bsc(0.1), awgn(2.0), rayleigh(6.0)):
        res = monte_carlo(fix_a, code, ch, 200_000, seed=11)
        assert abs(res.mc_estimate - res.analytic_p_avg) <= 3 * res.mc_std_err


def test_monte_carlo_validation(fix_a):
    code = encode(star(fix_a, 2))
    with pytest.raises(InvalidParameterError):
        monte_carlo(fix_a, code, bsc(0.1), 0, seed=1)


def test_sweep_csv_columns(fix_a):
    codes = [("star:2", encode(star(fix_a, 2)))]
    rows = sweep(fix_a, codes, "awgn", [0.0, 2.0], trials=2_000, seed=5)
    text = sweep_csv(rows)
    lines = text.strip().split("\n")
    assert (
        lines[0]
        == "code_id,channel,eb_n0_db,trials,analytic_pavg,mc_pavg,std_err,total_tx"
    )
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[0] == "star:2" and first[1] == "awgn" and first[-1] == "8"
