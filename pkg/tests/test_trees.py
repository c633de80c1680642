from __future__ import annotations

import pytest

from uniprior.advantage import advantage, modified_advantage
from uniprior.code import decoding_profile
from uniprior.errors import NonTreeUnionError, NotStronglyConnectedError
from uniprior.graph import InformationFlowGraph, parse_ifg
from uniprior.trees import (
    SpanningTree,
    algorithm1,
    algorithm2,
    algorithm3,
    algorithm4,
    algorithm5,
    articulation_blocks,
    resolve_algorithm,
    star,
    tree_from_dict,
    update_tree,
    update_tree_new,
)


def edges(t: SpanningTree) -> set[tuple[int, int]]:
    return set(t.sorted_edges())


# star -----------------------------------------------------------------------


def test_star_examples(fix_a, fix_b):
    assert edges(star(fix_a, 2)) == {(1, 2), (2, 3), (2, 4)}
    two = InformationFlowGraph.from_arcs(2, [(1, 2), (2, 1)])
    assert edges(star(two, 1)) == {(1, 2)}
    s3 = star(fix_b, 3)
    assert all(3 in e for e in s3.edges) and len(s3.edges) == 4


# update_tree ------------------------------------------------------------


def test_update_tree_fix_b(fix_b):
    t = update_tree(star(fix_b, 3), fix_b, {1, 2, 4, 5}, 3)
    assert edges(t) == {(1, 2), (1, 3), (3, 4), (4, 5)}


def test_update_tree_identity(fix_a):
    t = star(fix_a, 2)
    assert update_tree(t, fix_a, {1, 3, 4}, 2).edges == t.edges
    assert update_tree(t, fix_a, set(), 2).edges == t.edges


def test_update_tree_scan_order_total_invariant(fix_a, fix_b, fix_e):
    for g in (fix_a, fix_b, fix_e):
        root = algorithm1(g).root
        eligible = set(g.vertices) - {root}
        up = update_tree(star(g, root), g, eligible, root)
        down = update_tree(star(g, root), g, eligible, root, descending=True)
        assert (
            decoding_profile(g, up).total_tx == decoding_profile(g, down).total_tx
        )


def test_update_tree_new_fix_b(fix_b):
    t = update_tree_new(star(fix_b, 3), fix_b, {1, 2, 4, 5}, 3)
    assert edges(t) == {(1, 2), (1, 3), (3, 4), (3, 5)}


def test_update_tree_new_identity(fix_a):
    t = star(fix_a, 2)
    assert update_tree_new(t, fix_a, {1, 3, 4}, 2).edges == t.edges
    assert update_tree_new(t, fix_a, set(), 2).edges == t.edges


# algorithm1 -----------------------------------------------------------------


def test_algorithm1_fix_a(fix_a):
    t = algorithm1(fix_a)
    assert t.root == 2
    assert edges(t) == {(1, 2), (2, 3), (2, 4)}
    assert decoding_profile(fix_a, t).total_tx == 8


def test_algorithm1_fix_b(fix_b):
    t = algorithm1(fix_b)
    assert edges(t) == {(1, 2), (1, 3), (3, 4), (4, 5)}
    assert decoding_profile(fix_b, t).total_tx == 10


def test_algorithm1_two_vertices():
    g = InformationFlowGraph.from_arcs(2, [(1, 2), (2, 1)])
    t = algorithm1(g)
    assert edges(t) == {(1, 2)}
    assert decoding_profile(g, t).total_tx == 2


def test_algorithm1_needs_strong_connectivity():
    with pytest.raises(NotStronglyConnectedError):
        algorithm1(InformationFlowGraph.from_arcs(3, [(1, 2), (2, 3)]))


def test_algorithm1_total_identity(graphs):
    for g in graphs.values():
        best = max(advantage(g, v).adv for v in g.vertices)
        t = algorithm1(g)
        assert decoding_profile(g, t).total_tx == 2 * len(g.arcs) - best


# algorithm2 / algorithm3 ------------------------------------------------


def test_algorithm2_fix_e(fix_e):
    t = algorithm2(fix_e)
    assert t.root == 1
    assert edges(t) == edges(star(fix_e, 1))
    assert decoding_profile(fix_e, t).total_tx == 32


def test_algorithm2_matches_algorithm1_without_components(fix_a, fix_b):
    for g in (fix_a, fix_b):
        assert algorithm2(g).edges == algorithm1(g).edges


def test_algorithm3_fix_e(fix_e):
    t = algorithm3(fix_e)
    assert edges(t) == {(1, 2), (1, 3), (1, 4), (1, 5), (5, 6), (5, 7)}
    profile = decoding_profile(fix_e, t)
    assert profile.total_tx == 30
    assert profile.l_max == 2


def test_algorithm3_matches_algorithm2_without_gain(fix_a, fix_b):
    for g in (fix_a, fix_b):
        assert algorithm3(g).edges == algorithm2(g).edges


def test_algorithm3_total_identity(graphs):
    for g in graphs.values():
        best = max(modified_advantage(g, v).mod_adv for v in g.vertices)
        t = algorithm3(g)
        assert decoding_profile(g, t).total_tx == 2 * len(g.arcs) - best


def test_algorithm3_recursive_no_worse(graphs):
    for g in graphs.values():
        plain = decoding_profile(g, algorithm3(g))
        rec = decoding_profile(g, algorithm3(g, recursive=True))
        assert rec.l_max <= 2
        assert rec.total_tx <= plain.total_tx


# algorithm4 / algorithm5 ------------------------------------------------


def test_algorithm4_fix_b(fix_b):
    # The strict update moves vertex 2 but leaves the pendant 5 in place.
    assert edges(algorithm4(fix_b)) == {(1, 2), (1, 3), (3, 4), (3, 5)}


def test_algorithm5_fix_f(fix_f):
    t = algorithm5(fix_f)
    assert edges(t) == {(1, 2), (1, 3), (3, 4), (3, 5)}
    profile = decoding_profile(fix_f, t)
    assert profile.total_tx == 16
    assert profile.l_max == 2


def test_algorithm5_no_articulation_matches_algorithm4(fix_a, fix_e):
    for g in (fix_a, fix_e):
        assert algorithm5(g).edges == algorithm4(g).edges


def test_algorithm5_double_path():
    g = InformationFlowGraph.from_arcs(3, [(1, 2), (2, 1), (2, 3), (3, 2)])
    t = algorithm5(g)
    assert edges(t) == {(1, 2), (2, 3)}
    assert decoding_profile(g, t).total_tx == 4


def test_algorithm5_remark2_additivity(fix_f):
    t = algorithm5(fix_f)
    total = decoding_profile(fix_f, t).total_tx
    parts = 0
    for sub, old in articulation_blocks(fix_f):
        sub_tree = algorithm4(sub)
        parts += decoding_profile(sub, sub_tree).total_tx
    assert total == parts


def test_algorithm5_adjacent_cut_vertices_rejected(fix_b):
    # Cut vertices 3 and 4 are adjacent: the edge between them falls into
    # no block, so the overlap join cannot produce a spanning tree.
    with pytest.raises(NonTreeUnionError):
        algorithm5(fix_b)


# misc ---------------------------------------------------------------------


def test_resolve_algorithm(fix_a):
    assert resolve_algorithm("star:2")(fix_a).edges == star(fix_a, 2).edges
    assert resolve_algorithm("alg1")(fix_a).edges == algorithm1(fix_a).edges
    assert resolve_algorithm("oracle")(fix_a).n == 4
    with pytest.raises(ValueError):
        resolve_algorithm("alg9")


def test_tree_serialization_roundtrip(fix_e):
    t = algorithm3(fix_e)
    again = tree_from_dict(t.n, t.to_dict())
    assert again == t
    assert t.to_text().startswith("tree 7 1\n")


def test_tree_validation():
    with pytest.raises(ValueError):
        SpanningTree(3, frozenset({(1, 2)}), 1)
    with pytest.raises(ValueError):
        SpanningTree(3, frozenset({(1, 2), (1, 2)}), 1)
    with pytest.raises(ValueError):
        SpanningTree(4, frozenset({(1, 2), (1, 3), (2, 3)}), 1)
