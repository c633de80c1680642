from __future__ import annotations

import pytest

from uniprior.bounds import certify, lower_bounds, max_weight_tree
from uniprior.code import decoding_profile
from uniprior.errors import NotStronglyConnectedError
from uniprior.graph import InformationFlowGraph
from uniprior.oracle import oracle_optimal
from uniprior.trees import algorithm1, algorithm3, algorithm5, star


def test_lower_bounds_fixture_values(graphs):
    b = lower_bounds(graphs["fix_c5"])
    assert (b.lb1, b.lb2) == (7, 8)
    b = lower_bounds(graphs["fix_c2"])
    assert (b.lb1, b.lb2) == (5, None)
    b = lower_bounds(graphs["fix_e"])
    assert (b.lb1, b.lb2) == (26, 28)
    assert (b.e_total, b.e_undirected, b.d) == (20, 12, 8)


def test_lower_bounds_need_strong_connectivity():
    with pytest.raises(NotStronglyConnectedError):
        lower_bounds(InformationFlowGraph.from_arcs(3, [(1, 2), (2, 3)]))


def test_bounds_sound_on_fixtures(graphs):
    for g in graphs.values():
        if g.n < 2:
            continue
        b = lower_bounds(g)
        t_star = oracle_optimal(g).optimal_total_tx
        assert b.lb1 <= t_star
        if b.lb2 is not None:
            assert b.lb2 <= t_star
        assert b.e_undirected + b.d == b.e_total


def test_certify_fix_b_theorem7(fix_b):
    tree = algorithm1(fix_b)
    cert = certify(fix_b, tree, "alg1")
    assert cert.kind == "Theorem7"
    assert decoding_profile(fix_b, tree).total_tx == lower_bounds(fix_b).lb1


def test_certify_fix_c3_at_bound(graphs):
    # With exactly n-1 double pairs both certificate hypotheses hold and
    # both bounds coincide; the checker returns the first in theorem order.
    g = graphs["fix_c3"]
    tree = algorithm1(g)
    assert set(tree.sorted_edges()) == {(1, 2), (2, 3)}
    cert = certify(g, tree, "alg1")
    assert cert.kind in ("Theorem7", "Theorem8")
    b = lower_bounds(g)
    assert decoding_profile(g, tree).total_tx == b.lb2 == b.lb1 == 4


def test_certify_fix_a_none(fix_a):
    tree = algorithm1(fix_a)
    cert = certify(fix_a, tree, "alg1")
    assert cert.kind is None
    # Uncertified is not un-optimal: the brute-force optimum still equals
    # the achieved total even though it exceeds the first bound.
    assert decoding_profile(fix_a, tree).total_tx == 8 > lower_bounds(fix_a).lb1
    assert oracle_optimal(fix_a).optimal_total_tx == 8


def test_certify_fix_f_corollary15(fix_f):
    tree = algorithm5(fix_f)
    cert = certify(fix_f, tree, "alg5")
    assert cert.kind == "Corollary15"
    assert decoding_profile(fix_f, tree).total_tx == lower_bounds(fix_f).lb2 == 16
    kinds = {b["kind"] for b in cert.witness["blocks"]}
    assert kinds == {"Theorem8"}


def test_certificate_sound_on_fixtures(graphs):
    for g in graphs.values():
        bounds = lower_bounds(g)
        t1 = algorithm1(g)
        cert = certify(g, t1, "alg1")
        total = decoding_profile(g, t1).total_tx
        if cert.kind == "Theorem7":
            assert total == bounds.lb1
        elif cert.kind == "Theorem8":
            assert total == bounds.lb2
        t3 = algorithm3(g)
        cert3 = certify(g, t3, "alg3")
        total3 = decoding_profile(g, t3).total_tx
        if cert3.kind == "Theorem12-cond1":
            assert total3 == bounds.lb1
        elif cert3.kind == "Theorem12-cond2":
            assert total3 == bounds.lb2


def test_max_weight_matches_tree_builder_on_fix_b(fix_b):
    tree, l_max = max_weight_tree(fix_b)
    assert tree.edges == algorithm1(fix_b).edges
    assert l_max == 2


def test_max_weight_violates_distance_cap_on_fix_g(fix_g):
    tree, l_max = max_weight_tree(fix_g)
    assert set(tree.sorted_edges()) == {(1, 2), (2, 3), (3, 4), (4, 5)}
    assert l_max >= 3
    # The weight objective alone cannot see the distance constraint the
    # tree builders enforce.
    assert decoding_profile(fix_g, algorithm1(fix_g)).l_max == 2


def test_max_weight_uniform_weights():
    g = InformationFlowGraph.from_arcs(3, [(1, 2), (2, 3), (3, 1)])
    tree, _ = max_weight_tree(g)
    # All trees weigh n-1; the deterministic tie-break picks the
    # lexicographically smallest edges.
    assert set(tree.sorted_edges()) == {(1, 2), (1, 3)}
