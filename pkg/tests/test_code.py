from __future__ import annotations

import pytest

from uniprior.code import (
    IndexCode,
    PairTx,
    SingletonTx,
    code_from_dict,
    decode_paths,
    decoding_profile,
    encode,
    full_encode,
    profile_for_code,
    verify_code,
)
from uniprior.errors import TooLargeError
from uniprior.graph import InformationFlowGraph
from uniprior.trees import algorithm1, star


def test_encode_star(fix_a):
    code = encode(star(fix_a, 2))
    assert code.transmissions == (PairTx(1, 2), PairTx(2, 3), PairTx(2, 4))


def test_encode_single_edge():
    g = InformationFlowGraph.from_arcs(2, [(1, 2), (2, 1)])
    assert encode(star(g, 1)).transmissions == (PairTx(1, 2),)


def test_encode_fix_b_tree(fix_b):
    code = encode(algorithm1(fix_b))
    assert code.transmissions == (
        PairTx(1, 2),
        PairTx(1, 3),
        PairTx(3, 4),
        PairTx(4, 5),
    )


def test_profile_fix_a(fix_a):
    p2 = decoding_profile(fix_a, star(fix_a, 2))
    assert (p2.total_tx, p2.l_max, p2.t_single) == (8, 2, 4)
    p4 = decoding_profile(fix_a, star(fix_a, 4))
    assert p4.total_tx == 10


def test_profile_fix_b(fix_b):
    p = decoding_profile(fix_b, algorithm1(fix_b))
    assert (p.total_tx, p.l_max) == (10, 2)


def test_profile_t_single_two_ways(graphs):
    # Demands answered by one transmission are exactly the arcs whose edge
    # is in the tree.
    for g in graphs.values():
        t = algorithm1(g)
        profile = decoding_profile(g, t)
        direct = sum(
            1 for u, v in g.arcs if (min(u, v), max(u, v)) in t.edges
        )
        assert profile.t_single == direct
        assert profile.total_tx == 2 * len(g.arcs) - profile.t_single


def test_verify_star_code(fix_a):
    report = verify_code(fix_a, encode(star(fix_a, 2)))
    assert report.ok and report.vectors_checked == 16
    by_demand = {(c.source, c.receiver): c for c in report.checks}
    # Receiver 2 decodes message 3 from its own bit plus transmission c_1.
    assert by_demand[(3, 2)].detail == "x_2 + c_1"


def test_verify_all_tree_codes(graphs):
    for g in graphs.values():
        report = verify_code(g, encode(algorithm1(g)))
        assert report.ok


def test_verify_detects_missing_transmission(fix_a):
    code = encode(star(fix_a, 2))
    broken = IndexCode(code.transmissions[:-1])
    report = verify_code(fix_a, broken)
    assert not report.ok
    bad = [c for c in report.checks if not c.ok]
    assert bad and all("no transmissions" in c.detail for c in bad)


def test_verify_cap():
    g = InformationFlowGraph(21, frozenset())
    with pytest.raises(TooLargeError):
        verify_code(g, IndexCode(()))


def test_full_encode_pipeline():
    g = InformationFlowGraph.from_arcs(
        4, [(1, 2), (2, 1), (3, 4), (4, 3), (2, 3)]
    )
    code = full_encode(g, algorithm1)
    assert code.transmissions == (PairTx(1, 2), PairTx(3, 4), SingletonTx(2))
    report = verify_code(g, code)
    assert report.ok
    profile = profile_for_code(g, code)
    # The cross-component demand decodes straight from the singleton.
    cross = [d for d in profile.per_demand if (d.source, d.receiver) == (2, 3)]
    assert cross[0].l == 1 and not cross[0].uses_side_info


def test_full_encode_strongly_connected_matches_tree(fix_a):
    code = full_encode(fix_a, algorithm1)
    assert code == encode(algorithm1(fix_a))


def test_full_encode_isolated_vertex():
    g = InformationFlowGraph.from_arcs(3, [(1, 2), (2, 1)])
    code = full_encode(g, algorithm1)
    assert code.transmissions == (PairTx(1, 2),)


def test_full_encode_dedupes_singletons():
    # Two receivers demand message 1 across the component boundary.
    g = InformationFlowGraph.from_arcs(
        4, [(1, 2), (2, 1), (3, 4), (4, 3), (1, 3), (1, 4)]
    )
    code = full_encode(g, algorithm1)
    singles = [t for t in code.transmissions if isinstance(t, SingletonTx)]
    assert singles == [SingletonTx(1)]
    assert verify_code(g, code).ok


def test_decode_paths_match_tree_profile(fix_b):
    t = algorithm1(fix_b)
    code = encode(t)
    via_tree = decoding_profile(fix_b, t)
    via_code = profile_for_code(fix_b, code)
    assert via_tree.total_tx == via_code.total_tx
    assert via_tree.l_max == via_code.l_max
    assert {
        (d.source, d.receiver): d.l for d in via_tree.per_demand
    } == {(d.source, d.receiver): d.l for d in via_code.per_demand}


def test_code_serialization_roundtrip():
    code = IndexCode((PairTx(1, 2), SingletonTx(3)))
    assert code_from_dict(code.to_dict()) == code


def test_paths_use_zero_based_indexes(fix_a):
    profile = decoding_profile(fix_a, star(fix_a, 2))
    indexes = {k for d in profile.per_demand for k in d.tx_indexes}
    assert indexes <= {0, 1, 2}
