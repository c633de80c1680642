"""Per-vertex selection metrics for tree construction.

The advantage of a vertex counts the demands that decode from a single
transmission once its star is improved by the tree-update step: its degree,
plus one per re-parentable neighbor (the P set), plus two per double-arc
pendant outside its neighborhood (the O set).  The modified advantage adds,
for every bridge-separated component that can be re-rooted under its bridge
vertex, the positive part of that component's Q gain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidComponentError, NotStronglyConnectedError
from .graph import CutStructure, InformationFlowGraph, cut_structure


@dataclass(frozen=True)
class AdvantageEntry:
    vertex: int
    degree: int
    p_set: frozenset[int]
    p_value: int
    o_set: frozenset[int]
    o_value: int
    adv: int

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "degree": self.degree,
            "p_set": sorted(self.p_set),
            "p": self.p_value,
            "o_set": sorted(self.o_set),
            "o": self.o_value,
            "adv": self.adv,
        }


@dataclass(frozen=True)
class QualifyingComponent:
    vertices: frozenset[int]
    bridge_vertex: int
    q: int

    def to_dict(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "bridge_vertex": self.bridge_vertex,
            "q": self.q,
        }


@dataclass(frozen=True)
class ModifiedAdvantageEntry:
    vertex: int
    base: AdvantageEntry
    bridge_arcs: frozenset[tuple[int, int]]
    qualifying_components: tuple[QualifyingComponent, ...]
    mod_adv: int

    def to_dict(self) -> dict:
        d = self.base.to_dict()
        d["mod_adv"] = self.mod_adv
        d["components"] = [c.to_dict() for c in self.qualifying_components]
        return d


def _require_strongly_connected(g: InformationFlowGraph) -> None:
    if not g.is_strongly_connected:
        raise NotStronglyConnectedError("operation needs a strongly connected graph")


def p_set(g: InformationFlowGraph, v: int) -> frozenset[int]:
    """Neighbors k of v reachable by one arc only, whose single other
    neighbor holds them with a double arc."""
    out = set()
    for k in g.neighbors[v]:
        if g.conn(v, k) != 1:
            continue
        rest = g.neighbors[k] - {v}
        if len(rest) != 1:
            continue
        (l,) = rest
        if g.conn(k, l) == 2:
            out.add(k)
    return frozenset(out)


def o_set(g: InformationFlowGraph, v: int) -> frozenset[int]:
    """Vertices outside N(v) with exactly one neighbor."""
    return frozenset(
        k
        for k in g.vertices
        if k != v and k not in g.neighbors[v] and len(g.neighbors[k]) == 1
    )


def _partner(g: InformationFlowGraph, v: int, k: int) -> int:
    (l,) = g.neighbors[k] - {v}
    return l


def advantage(g: InformationFlowGraph, v: int) -> AdvantageEntry:
    """Advantage of v: degree + p + 2o.

    The pair deduction halves the count of ordered pairs (k, l) with both
    endpoints in the P set where l is k's double-arc partner.  Partnership
    between two P members is necessarily mutual, so the ordered count is
    even and p is always an integer: only one vertex of a mutual pair can be
    re-parented, so the pair contributes a net one.
    """
    g._check_vertex(v)
    _require_strongly_connected(g)
    deg = g.degree(v)
    ps = p_set(g, v)
    ordered_pairs = sum(1 for k in ps if _partner(g, v, k) in ps)
    assert ordered_pairs % 2 == 0
    p_value = len(ps) - ordered_pairs // 2
    os_ = o_set(g, v)
    adv = deg + p_value + 2 * len(os_)
    return AdvantageEntry(v, deg, ps, p_value, os_, len(os_), adv)


def qualifying_components(
    g: InformationFlowGraph, v: int, cs: Optional[CutStructure] = None
) -> list[tuple[frozenset[int], int]]:
    """Components of the vertex-deleted, bridge-deleted graph that can be
    re-rooted: at least two vertices and exactly one bridge vertex."""
    if cs is None:
        cs = cut_structure(g, v)
    out = []
    for comp in cs.components_after:
        if len(comp) < 2:
            continue
        inter = comp & cs.bridge_vertices
        if len(inter) == 1:
            (u,) = inter
            out.append((comp, u))
    return out


def q_value(
    g: InformationFlowGraph, v: int, component: Iterable[int], u: int
) -> int:
    """Signed gain from re-rooting ``component`` under its bridge vertex u
    instead of keeping its vertices as children of v.

    Uses the P value of u in the full graph, not restricted to the
    component: a component-local improvement is also a full-graph one.
    """
    comp = frozenset(component)
    valid = {c: bu for c, bu in qualifying_components(g, v)}
    if comp not in valid or valid[comp] != u:
        raise InvalidComponentError(
            f"{sorted(comp)} with bridge vertex {u} does not qualify for vertex {v}"
        )
    return _q_value_unchecked(g, v, comp, u)


def _q_value_unchecked(
    g: InformationFlowGraph, v: int, comp: frozenset[int], u: int
) -> int:
    gain = g.conn_set(u, comp)
    loss = g.conn_set(v, comp - {u})
    p_u = advantage(g, u).p_value
    overlap = len(p_set(g, v) & comp)
    return gain - loss + p_u - overlap


def modified_advantage(g: InformationFlowGraph, v: int) -> ModifiedAdvantageEntry:
    """Advantage plus the positive Q gains of all qualifying components."""
    base = advantage(g, v)
    if g.n <= 2:
        return ModifiedAdvantageEntry(v, base, frozenset(), (), base.adv)
    cs = cut_structure(g, v)
    bridge_arcs = frozenset(
        a for a in g.arcs if (min(a), max(a)) in cs.bridges
    )
    quals = []
    for comp, u in qualifying_components(g, v, cs):
        quals.append(QualifyingComponent(comp, u, _q_value_unchecked(g, v, comp, u)))
    quals.sort(key=lambda c: min(c.vertices))
    mod = base.adv + sum(c.q for c in quals if c.q > 0)
    return ModifiedAdvantageEntry(v, base, bridge_arcs, tuple(quals), mod)


def advantage_report(g: InformationFlowGraph) -> list[ModifiedAdvantageEntry]:
    return [modified_advantage(g, v) for v in g.vertices]
