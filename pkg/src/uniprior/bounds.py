"""Lower bounds on total decoding transmissions and optimality certificates.

Two bounds: LB1 = |E| + |E_U| - (n-1) always; LB2 = 2(|E| - n + 1) when the
double-arc count reaches n-1.  The certificates are literal hypothesis
checkers for the sufficient conditions under which the tree builders meet a
bound; a missing certificate means "not certified", not "not optimal".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .advantage import advantage, modified_advantage, o_set, p_set
from .errors import NotStronglyConnectedError
from .graph import InformationFlowGraph, Pair, cut_structure, pair, simplify
from .trees import SpanningTree, articulation_blocks, algorithm4


@dataclass(frozen=True)
class BoundsReport:
    lb1: int
    lb2: Optional[int]
    e_total: int
    e_undirected: int
    d: int

    def to_dict(self) -> dict:
        return {
            "lb1": self.lb1,
            "lb2": self.lb2,
            "edges": self.e_total,
            "edges_undirected": self.e_undirected,
            "double_pairs": self.d,
        }


@dataclass(frozen=True)
class OptimalityCertificate:
    kind: Optional[str]
    witness: dict

    @property
    def certified(self) -> bool:
        return self.kind is not None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "witness": self.witness}


def lower_bounds(g: InformationFlowGraph) -> BoundsReport:
    if not g.is_strongly_connected:
        raise NotStronglyConnectedError("bounds need a strongly connected graph")
    view = simplify(g)
    e = len(g.arcs)
    e_u = len(view.edges_u)
    lb1 = e + e_u - (g.n - 1)
    lb2 = 2 * (e - g.n + 1) if view.d >= g.n - 1 else None
    return BoundsReport(lb1, lb2, e, e_u, view.d)


def _theorem7(g: InformationFlowGraph, tree: SpanningTree) -> Optional[dict]:
    """Sparse-double-arc condition: every double arc between two neighbors
    of the root is anchored by a re-parentable endpoint, and every
    non-neighbor is a single-neighbor pendant."""
    view = simplify(g)
    if view.d > g.n - 1:
        return None
    i = tree.root
    nbrs = g.neighbors[i]
    for j, k in view.double_pairs:
        if j not in nbrs or k not in nbrs:
            continue
        ok_j = g.neighbors[j] == {i, k} and g.conn(i, j) == 1
        ok_k = g.neighbors[k] == {i, j} and g.conn(i, k) == 1
        if not (ok_j or ok_k):
            return None
    for j in g.vertices:
        if j != i and j not in nbrs and len(g.neighbors[j]) != 1:
            return None
    return {"root": i}


def _theorem8(g: InformationFlowGraph, tree: SpanningTree) -> Optional[dict]:
    """Dense-double-arc condition: every root neighbor either shares a
    double arc with the root or hangs by double arcs off such a neighbor,
    and every non-neighbor is a single-neighbor pendant."""
    view = simplify(g)
    if view.d < g.n - 1:
        return None
    i = tree.root
    nbrs = g.neighbors[i]
    for j in g.vertices:
        if j == i:
            continue
        if j in nbrs:
            if g.conn(i, j) == 2:
                continue
            rest = g.neighbors[j] - {i}
            if len(rest) != 1:
                return None
            (k,) = rest
            if not (k in nbrs and g.conn(k, i) == 2 and g.conn(j, k) == 2):
                return None
        else:
            if len(g.neighbors[j]) != 1:
                return None
    return {"root": i}


def _theorem12(g: InformationFlowGraph, tree: SpanningTree) -> Optional[tuple[str, dict]]:
    """Bridge-component condition: at least two components after vertex and
    bridge deletion, all of them re-rootable with positive gain, with the
    double-arc pattern confined to (cond 1) or covering (cond 2) the
    vertex pairs that become tree edges."""
    v = tree.root
    entry = modified_advantage(g, v)
    comps = entry.qualifying_components
    # Every component must qualify: singletons or multi-bridge components
    # void the hypothesis.
    cs = cut_structure(g, v)
    if len(cs.components_after) != len(comps):
        return None
    if len(comps) < 2 or any(c.q <= 0 for c in comps):
        return None
    vp1: set[Pair] = set()
    vp2: set[Pair] = set()
    vp3: set[Pair] = set()
    for comp in comps:
        u = comp.bridge_vertex
        vp1.add(pair(v, u))
        movable = p_set(g, u) | o_set(g, u)
        for w in comp.vertices:
            if w != u and w not in movable:
                vp2.add(pair(u, w))
        for x in movable:
            rest = g.neighbors[x] - {u}
            if len(rest) == 1:
                (y,) = rest
                vp3.add(pair(x, y))
    vp_all = vp1 | vp2 | vp3
    witness = {
        "root": v,
        "vp1": sorted(vp1),
        "vp2": sorted(vp2),
        "vp3": sorted(vp3),
    }
    all_pairs = [
        (a, b) for a in g.vertices for b in g.vertices if a < b
    ]
    if all(g.conn(a, b) <= 1 for a, b in all_pairs if (a, b) not in vp_all):
        return "Theorem12-cond1", witness
    if all(g.conn(a, b) == 2 for a, b in vp_all):
        return "Theorem12-cond2", witness
    return None


def _corollary15(g: InformationFlowGraph, tree: SpanningTree) -> Optional[dict]:
    """Every block certified by one of the three per-block conditions."""
    blocks = articulation_blocks(g)
    if len(blocks) == 1:
        return None
    parts = []
    for sub, old in blocks:
        sub_tree = algorithm4(sub)
        if _theorem7(sub, sub_tree) is not None:
            kind = "Theorem7"
        elif _theorem8(sub, sub_tree) is not None:
            kind = "Theorem8"
        else:
            t12 = _theorem12(sub, sub_tree)
            if t12 is None:
                return None
            kind = t12[0]
        parts.append({"vertices": list(old), "kind": kind})
    return {"blocks": parts}


def certify(
    g: InformationFlowGraph, tree: SpanningTree, which: str
) -> OptimalityCertificate:
    """Check the sufficient optimality conditions matching the builder that
    produced ``tree`` and return the first one that holds."""
    if which == "alg1":
        w = _theorem7(g, tree)
        if w is not None:
            return OptimalityCertificate("Theorem7", w)
        w = _theorem8(g, tree)
        if w is not None:
            return OptimalityCertificate("Theorem8", w)
    elif which == "alg3":
        res = _theorem12(g, tree)
        if res is not None:
            return OptimalityCertificate(res[0], res[1])
    elif which == "alg5":
        w = _corollary15(g, tree)
        if w is not None:
            return OptimalityCertificate("Corollary15", w)
    return OptimalityCertificate(None, {})


def max_weight_tree(g: InformationFlowGraph) -> tuple[SpanningTree, int]:
    """Maximum-weight spanning tree of the conn-weighted undirected graph,
    plus the resulting worst per-demand cost.

    Demonstrates that weight alone is not enough: the returned tree can
    leave a demand at distance three or more.  Ties break on the
    lexicographically smallest edge.
    """
    if not g.is_strongly_connected:
        raise NotStronglyConnectedError("comparison needs a strongly connected graph")
    view = simplify(g)
    ranked = sorted(view.edges_u, key=lambda e: (-g.conn(*e), e))
    parent = list(range(g.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen: set[Pair] = set()
    for u, v in ranked:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.add((u, v))
    tree = SpanningTree(g.n, frozenset(chosen), min(g.vertices))
    l_max = max((tree.distance(j, i) for i, j in g.arcs), default=0)
    return tree, l_max
