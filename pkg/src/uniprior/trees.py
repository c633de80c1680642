"""Spanning-tree construction for strongly connected demand graphs.

All builders return trees whose index codes decode every demand in at most
two transmissions.  ``algorithm1`` roots the best star by advantage and
re-parents pendant-like vertices; ``algorithm2`` selects the root by
modified advantage instead; ``algorithm3`` additionally re-roots qualifying
bridge components; ``algorithm4`` is the variant with the stricter update
condition used per block; ``algorithm5`` splits at articulation points,
builds a tree per block, and joins them on the shared cut vertices.

Root selection ties break by maximum degree, then lowest vertex index, so
every builder is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional

from .advantage import advantage, modified_advantage, p_set
from .errors import (
    NonTreeUnionError,
    NotStronglyConnectedError,
    VertexOutOfRangeError,
)
from .graph import InformationFlowGraph, Pair, cut_structure, induced_subgraph, pair


@dataclass(frozen=True)
class SpanningTree:
    """Undirected spanning tree of the vertex set 1..n.

    ``root`` is the head for stars and the selection vertex for the
    algorithmic builders.
    """

    n: int
    edges: frozenset[Pair]
    root: int

    def __post_init__(self) -> None:
        if not (1 <= self.root <= self.n):
            raise VertexOutOfRangeError(f"root {self.root} outside 1..{self.n}")
        if len(self.edges) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} edges, got {len(self.edges)}")
        if self.n > 1 and not _is_spanning_tree(self.n, self.edges):
            raise ValueError("edge set is not a spanning tree")

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ws)) for v, ws in adj.items()}

    def sorted_edges(self) -> list[Pair]:
        return sorted(self.edges)

    def path(self, start: int, goal: int) -> list[Pair]:
        """Unique tree path as a list of edges from start towards goal."""
        parent: dict[int, int] = {start: 0}
        frontier = [start]
        while frontier:
            nxt: list[int] = []
            for v in frontier:
                if v == goal:
                    frontier = []
                    break
                for w in self.adjacency[v]:
                    if w not in parent:
                        parent[w] = v
                        nxt.append(w)
            else:
                frontier = nxt
        edges: list[Pair] = []
        v = goal
        while v != start:
            edges.append(pair(v, parent[v]))
            v = parent[v]
        edges.reverse()
        return edges

    def distance(self, u: int, v: int) -> int:
        return len(self.path(u, v))

    def to_dict(self) -> dict:
        return {"root": self.root, "edges": [list(e) for e in self.sorted_edges()]}

    def to_text(self) -> str:
        lines = [f"tree {self.n} {self.root}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"


def tree_from_dict(n: int, data: dict) -> SpanningTree:
    edges = frozenset(pair(int(u), int(v)) for u, v in data["edges"])
    return SpanningTree(n, edges, int(data["root"]))


def _is_spanning_tree(n: int, edges: Iterable[Pair]) -> bool:
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = 0
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
        count += 1
    return count == n - 1


def _require_strongly_connected(g: InformationFlowGraph) -> None:
    if not g.is_strongly_connected:
        raise NotStronglyConnectedError("tree builders need a strongly connected graph")


def star(g: InformationFlowGraph, v: int) -> SpanningTree:
    """Star with head v: every other vertex is a leaf."""
    g._check_vertex(v)
    edges = frozenset(pair(v, u) for u in g.vertices if u != v)
    return SpanningTree(g.n, edges, v)


def _star_edges(head: int, vertices: Iterable[int]) -> set[Pair]:
    return {pair(head, u) for u in vertices if u != head}


def _updated_edges(
    edges: set[Pair],
    g: InformationFlowGraph,
    eligible: Iterable[int],
    i: int,
    *,
    exact_neighborhood: bool,
    descending: bool = False,
) -> set[Pair]:
    """Core update loop shared by both update variants.

    Repeatedly finds an eligible j whose neighborhood (minus i, or exactly
    {i, k} for the strict variant) leaves a single vertex k with more arcs
    to j than i has, moves j from under i to under k, and retires both j
    and k from eligibility.  Terminates because eligibility shrinks.
    """
    edges = set(edges)
    eligible = set(eligible)
    while True:
        for j in sorted(eligible, reverse=descending):
            nbrs = g.neighbors[j]
            if exact_neighborhood:
                if i not in nbrs or len(nbrs) != 2:
                    continue
                (k,) = nbrs - {i}
            else:
                rest = nbrs - {i}
                if len(rest) != 1:
                    continue
                (k,) = rest
            if g.conn(j, k) <= g.conn(i, j):
                continue
            old = pair(i, j)
            if old not in edges:
                raise ValueError(f"vertex {j} is not attached to {i}; not an updatable star")
            edges.remove(old)
            edges.add(pair(k, j))
            eligible.discard(j)
            eligible.discard(k)
            break
        else:
            return edges


def update_tree(
    t: SpanningTree,
    g: InformationFlowGraph,
    eligible: Iterable[int],
    i: int,
    *,
    descending: bool = False,
) -> SpanningTree:
    """One-shot tree update on a (possibly partially updated) star at i."""
    edges = _updated_edges(
        set(t.edges), g, eligible, i, exact_neighborhood=False, descending=descending
    )
    return SpanningTree(t.n, frozenset(edges), t.root)


def update_tree_new(
    t: SpanningTree,
    g: InformationFlowGraph,
    eligible: Iterable[int],
    i: int,
    *,
    descending: bool = False,
) -> SpanningTree:
    """Stricter variant: only vertices with neighborhood exactly {i, k} move.

    Double-arc pendants are left in place; the block decomposition of
    ``algorithm5`` hands them to their own block instead.
    """
    edges = _updated_edges(
        set(t.edges), g, eligible, i, exact_neighborhood=True, descending=descending
    )
    return SpanningTree(t.n, frozenset(edges), t.root)


def _select_root(g: InformationFlowGraph, score: dict[int, int]) -> int:
    best = max(score.values())
    candidates = [v for v in g.vertices if score[v] == best]
    top_degree = max(g.degree(v) for v in candidates)
    return min(v for v in candidates if g.degree(v) == top_degree)


def algorithm1(g: InformationFlowGraph) -> SpanningTree:
    """Best star by advantage, improved by the tree update."""
    _require_strongly_connected(g)
    score = {v: advantage(g, v).adv for v in g.vertices}
    i = _select_root(g, score)
    edges = _star_edges(i, g.vertices)
    if g.max_degree < score[i]:
        edges = _updated_edges(
            edges, g, set(g.vertices) - {i}, i, exact_neighborhood=False
        )
    return SpanningTree(g.n, frozenset(edges), i)


def _root_by_modified_advantage(g: InformationFlowGraph):
    entries = {v: modified_advantage(g, v) for v in g.vertices}
    score = {v: e.mod_adv for v, e in entries.items()}
    i = _select_root(g, score)
    return i, entries[i]


def algorithm2(g: InformationFlowGraph) -> SpanningTree:
    """As algorithm1 but the root maximizes the modified advantage."""
    _require_strongly_connected(g)
    i, entry = _root_by_modified_advantage(g)
    edges = _star_edges(i, g.vertices)
    if g.max_degree < entry.mod_adv:
        edges = _updated_edges(
            edges, g, set(g.vertices) - {i}, i, exact_neighborhood=False
        )
    return SpanningTree(g.n, frozenset(edges), i)


def algorithm4(g: InformationFlowGraph) -> SpanningTree:
    """Algorithm2 with the stricter update; the per-block builder."""
    _require_strongly_connected(g)
    i, entry = _root_by_modified_advantage(g)
    edges = _star_edges(i, g.vertices)
    if g.max_degree < entry.mod_adv:
        edges = _updated_edges(
            edges, g, set(g.vertices) - {i}, i, exact_neighborhood=True
        )
    return SpanningTree(g.n, frozenset(edges), i)


def _graft_components(
    edges: set[Pair],
    g: InformationFlowGraph,
    v: int,
    components,
    pinned: frozenset[int],
    recursive: bool,
) -> set[Pair]:
    """Re-root every positive-gain component under its bridge vertex.

    Each qualifying component's vertices currently hang off v as star
    leaves; their star edges are replaced by the component sub-tree plus the
    single edge (v, bridge vertex).  Pendant vertices attached into the
    component by an earlier update hang off the bridge vertex and keep
    their edges.  ``pinned`` vertices must stay within tree distance two of
    the global root, so a recursive graft never moves them deeper.
    """
    for comp in components:
        if comp.q <= 0:
            continue
        u = comp.bridge_vertex
        members = comp.vertices
        sub = _star_edges(u, members)
        sub = _updated_edges(
            sub,
            g,
            members - (set(g.neighbors[v]) | {u}),
            u,
            exact_neighborhood=False,
        )
        if recursive:
            sub = _recursive_graft(sub, g, members, u, pinned | g.neighbors[v])
        for w in members:
            if w != u:
                edges.remove(pair(v, w))
        edges.add(pair(v, u))
        edges |= sub
    return edges


def _recursive_graft(
    sub_edges: set[Pair],
    g: InformationFlowGraph,
    members: frozenset[int],
    u: int,
    pinned: frozenset[int],
) -> set[Pair]:
    """Optional deeper re-rooting inside a grafted component.

    The component is treated as its own instance rooted at its bridge
    vertex; a nested component is grafted only when its gain is positive
    and none of its non-root vertices are pinned to depth two.
    """
    from .advantage import _q_value_unchecked, qualifying_components

    sub_g, old = induced_subgraph(g, members)
    new_of = {v: i + 1 for i, v in enumerate(old)}
    cs = cut_structure(sub_g, new_of[u])
    for comp_new, bridge_new in qualifying_components(sub_g, new_of[u], cs):
        comp = frozenset(old[w - 1] for w in comp_new)
        u2 = old[bridge_new - 1]
        if any(w in pinned for w in comp if w != u2):
            continue
        q = (
            g.conn_set(u2, comp)
            - g.conn_set(u, comp - {u2})
            + advantage(g, u2).p_value
            - len(p_set(g, u) & comp)
        )
        if q <= 0:
            continue
        inner = _star_edges(u2, comp)
        inner = _updated_edges(
            inner,
            g,
            comp - (set(g.neighbors[u]) | {u2}),
            u2,
            exact_neighborhood=False,
        )
        inner = _recursive_graft(inner, g, comp, u2, pinned | g.neighbors[u])
        for w in comp:
            if w != u2:
                sub_edges.discard(pair(u, w))
        sub_edges.add(pair(u, u2))
        sub_edges |= inner
    return sub_edges


def algorithm3(g: InformationFlowGraph, recursive: bool = False) -> SpanningTree:
    """Algorithm2 plus re-rooting of positive-gain bridge components.

    ``recursive`` additionally re-roots nested components inside each
    grafted component (off by default).
    """
    _require_strongly_connected(g)
    i, entry = _root_by_modified_advantage(g)
    edges = _star_edges(i, g.vertices)
    if g.max_degree < entry.mod_adv:
        edges = _updated_edges(
            edges, g, set(g.vertices) - {i}, i, exact_neighborhood=False
        )
    edges = _graft_components(
        edges, g, i, entry.qualifying_components, frozenset(), recursive
    )
    return SpanningTree(g.n, frozenset(edges), i)


def articulation_blocks(
    g: InformationFlowGraph,
) -> list[tuple[InformationFlowGraph, list[int]]]:
    """Sub-instances used by algorithm5: one per component of the graph with
    its articulation points deleted, each extended by the cut vertices
    adjacent to it.  Returns (subgraph, original-vertex mapping) pairs."""
    cs = cut_structure(g, None)
    cut = cs.articulation_points
    if not cut:
        return [(g, list(g.vertices))]
    remaining = {
        v: sorted(w for w in g.neighbors[v] if w not in cut)
        for v in g.vertices
        if v not in cut
    }
    comps = []
    seen: set[int] = set()
    for s in sorted(remaining):
        if s in seen:
            continue
        comp = {s}
        frontier = [s]
        seen.add(s)
        while frontier:
            x = frontier.pop()
            for w in remaining[x]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    frontier.append(w)
        comps.append(comp)
    blocks = []
    for comp in sorted(comps, key=min):
        attached = {s for s in cut if g.neighbors[s] & comp}
        blocks.append(induced_subgraph(g, comp | attached))
    return blocks


def algorithm5(g: InformationFlowGraph) -> SpanningTree:
    """Split at articulation points, build a tree per block, join on the
    shared cut vertices.

    Raises NonTreeUnionError when the joined edge set is not a spanning
    tree: the overlap join only covers block structures whose blocks meet
    pairwise in single cut vertices (adjacent cut vertices, for instance,
    leave their connecting edge in no block).
    """
    _require_strongly_connected(g)
    blocks = articulation_blocks(g)
    if len(blocks) == 1:
        return algorithm4(g)
    edges: set[Pair] = set()
    root: Optional[int] = None
    for sub, old in blocks:
        t = algorithm4(sub)
        if root is None:
            root = old[t.root - 1]
        for a, b in t.edges:
            e = pair(old[a - 1], old[b - 1])
            if e in edges:
                raise NonTreeUnionError(f"edge {e} produced by two blocks")
            edges.add(e)
    if len(edges) != g.n - 1 or not _is_spanning_tree(g.n, edges):
        raise NonTreeUnionError(
            "block trees do not join into a spanning tree of the full graph"
        )
    assert root is not None
    return SpanningTree(g.n, frozenset(edges), root)


ALGORITHMS: dict[str, Callable[[InformationFlowGraph], SpanningTree]] = {
    "alg1": algorithm1,
    "alg2": algorithm2,
    "alg3": algorithm3,
    "alg4": algorithm4,
    "alg5": algorithm5,
}


def resolve_algorithm(
    name: str, recursive: bool = False
) -> Callable[[InformationFlowGraph], SpanningTree]:
    """Map a CLI selector (star:<v>, alg1..alg5, oracle) to a builder."""
    if name.startswith("star:"):
        head = int(name.split(":", 1)[1])
        return lambda g: star(g, head)
    if name == "oracle":
        from .oracle import oracle_optimal

        return lambda g: oracle_optimal(g).optimal_tree
    if name == "alg3" and recursive:
        return lambda g: algorithm3(g, recursive=True)
    if name in ALGORITHMS:
        return ALGORITHMS[name]
    raise ValueError(f"unknown algorithm selector {name!r}")
