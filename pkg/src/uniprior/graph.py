"""Information-flow graphs and their structural decompositions.

A problem instance is a directed graph on receivers 1..n where an arc (u, v)
means receiver v demands message u.  Everything downstream (tree selection,
bounds, simulation) consumes the views computed here: pairwise arc counts,
the simplified undirected graph, strongly connected components, and the
bridge / articulation-point structure of vertex-deleted subgraphs.

All values are immutable after construction and safe to share across threads.
Vertices are 1-indexed in every public interface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    DuplicateArcError,
    EqualVerticesError,
    MalformedLineError,
    SelfLoopError,
    VertexOutOfRangeError,
)

Arc = tuple[int, int]
Pair = tuple[int, int]  # unordered pair stored as (min, max)


def pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class InformationFlowGraph:
    """Directed demand graph: arc (u, v) means receiver v demands message u."""

    n: int
    arcs: frozenset[Arc]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise VertexOutOfRangeError(f"vertex count must be positive, got {self.n}")
        for u, v in self.arcs:
            if u == v:
                raise SelfLoopError(f"arc ({u}, {v}): self-demands are not allowed")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise VertexOutOfRangeError(f"arc ({u}, {v}) outside 1..{self.n}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Arc]) -> "InformationFlowGraph":
        """Build a graph, rejecting duplicate arc declarations."""
        seen: set[Arc] = set()
        for arc in arcs:
            a = (int(arc[0]), int(arc[1]))
            if a in seen:
                raise DuplicateArcError(f"arc {a} declared twice")
            seen.add(a)
        return cls(n, frozenset(seen))

    @cached_property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def neighbors(self) -> dict[int, frozenset[int]]:
        """Undirected neighborhoods N(v) (in- and out-neighbors combined)."""
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.arcs:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def conn(self, u: int, v: int) -> int:
        """Number of arcs between u and v: 0, 1 or 2."""
        if u == v:
            raise EqualVerticesError(f"conn({u}, {v}) needs distinct vertices")
        self._check_vertex(u)
        self._check_vertex(v)
        return ((u, v) in self.arcs) + ((v, u) in self.arcs)

    def conn_set(self, u: int, vertices: Iterable[int]) -> int:
        """Total number of arcs between u and a vertex set (u excluded)."""
        return sum(self.conn(u, w) for w in vertices if w != u)

    def degree(self, v: int) -> int:
        """In-degree plus out-degree: sum of conn(v, u) over all u."""
        self._check_vertex(v)
        return sum(((v, u) in self.arcs) + ((u, v) in self.arcs) for u in self.neighbors[v])

    @cached_property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    @cached_property
    def is_strongly_connected(self) -> bool:
        return len(scc_decompose(self).components) == 1

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise VertexOutOfRangeError(f"vertex {v} outside 1..{self.n}")

    def to_ifg_text(self) -> str:
        lines = [f"n {self.n}"]
        lines += [f"{u} {v}" for u, v in sorted(self.arcs)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class UndirectedView:
    """Simplified undirected graph plus the double-arc pairs."""

    edges_u: frozenset[Pair]
    double_pairs: frozenset[Pair]

    @property
    def d(self) -> int:
        return len(self.double_pairs)


@dataclass(frozen=True)
class SccDecomposition:
    components: tuple[frozenset[int], ...]
    leftover_arcs: frozenset[Arc]


@dataclass(frozen=True)
class CutStructure:
    """Bridges and articulation points of an (optionally vertex-deleted)
    undirected simplification, plus the components left once every bridge
    edge is removed.

    ``components_after`` lists all components including singletons; callers
    that need the qualifying ones filter by size and bridge-vertex count.
    """

    removed_vertex: Optional[int]
    bridges: frozenset[Pair]
    articulation_points: frozenset[int]
    components_after: tuple[frozenset[int], ...]

    @cached_property
    def bridge_vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.bridges for v in e)


def parse_ifg(text: str) -> InformationFlowGraph:
    """Parse the IFG text format.

    UTF-8, LF line endings; ``#`` starts a comment line; the first
    non-comment line is ``n <count>``; every further non-comment line is
    ``<u> <v>`` declaring the arc u -> v (1-indexed).  Blank lines are
    ignored.  Duplicate arcs are rejected rather than merged: a duplicate
    almost certainly indicates a malformed instance.
    """
    n: Optional[int] = None
    arcs: list[Arc] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n" or not tokens[1].isdigit():
                raise MalformedLineError(f"line {lineno}: expected 'n <count>', got {line!r}")
            n = int(tokens[1])
            continue
        if len(tokens) != 2:
            raise MalformedLineError(f"line {lineno}: expected '<u> <v>', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise MalformedLineError(f"line {lineno}: non-integer vertex in {line!r}") from None
        arcs.append((u, v))
    if n is None:
        raise MalformedLineError("missing 'n <count>' header line")
    return InformationFlowGraph.from_arcs(n, arcs)


def load_ifg(path) -> InformationFlowGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_ifg(fh.read())


def conn(g: InformationFlowGraph, u: int, v: int) -> int:
    return g.conn(u, v)


def simplify(g: InformationFlowGraph) -> UndirectedView:
    edges: set[Pair] = set()
    doubles: set[Pair] = set()
    for u, v in g.arcs:
        e = pair(u, v)
        edges.add(e)
        if (v, u) in g.arcs:
            doubles.add(e)
    return UndirectedView(frozenset(edges), frozenset(doubles))


def scc_decompose(g: InformationFlowGraph) -> SccDecomposition:
    """Strongly connected components (iterative Tarjan) plus the arcs that
    run between distinct components.

    Components are ordered by their smallest vertex for determinism.
    """
    out: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in g.arcs:
        out[u].append(v)
    for v in g.vertices:
        out[v].sort()

    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[frozenset[int]] = []
    counter = 0

    for root in g.vertices:
        if root in index:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            while i < len(out[v]):
                w = out[v][i]
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                components.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    components.sort(key=min)
    member: dict[int, frozenset[int]] = {}
    for comp in components:
        for v in comp:
            member[v] = comp
    leftover = frozenset(a for a in g.arcs if member[a[0]] is not member[a[1]])
    return SccDecomposition(tuple(components), leftover)


def _undirected_adjacency(
    g: InformationFlowGraph, removed: Optional[int]
) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {
        v: sorted(w for w in g.neighbors[v] if w != removed)
        for v in g.vertices
        if v != removed
    }
    return adj


def _bridges_and_articulation(
    adj: dict[int, list[int]]
) -> tuple[set[Pair], set[int]]:
    """Classic disc/low DFS, iterative to stay stack-safe on large inputs."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    bridges: set[Pair] = set()
    articulation: set[int] = set()
    timer = 0

    for root in sorted(adj):
        if root in disc:
            continue
        parent[root] = None
        root_children = 0
        stack: list[tuple[int, int]] = [(root, 0)]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, i = stack.pop()
            if i < len(adj[v]):
                stack.append((v, i + 1))
                w = adj[v][i]
                if w not in disc:
                    parent[w] = v
                    if v == root:
                        root_children += 1
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, 0))
                elif w != parent[v]:
                    low[v] = min(low[v], disc[w])
            else:
                p = parent[v]
                if p is not None:
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        bridges.add(pair(p, v))
                    if p != root and low[v] >= disc[p]:
                        articulation.add(p)
        if root_children >= 2:
            articulation.add(root)
    return bridges, articulation


def _connected_components(adj: dict[int, Iterable[int]]) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        frontier = [start]
        seen.add(start)
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    frontier.append(w)
        comps.append(frozenset(comp))
    comps.sort(key=min)
    return comps


def cut_structure(
    g: InformationFlowGraph, removed: Optional[int] = None
) -> CutStructure:
    """Bridges, articulation points, and post-bridge-removal components of
    the undirected simplification, optionally after deleting one vertex.

    Single-vertex entries in ``components_after`` are reported but never
    qualify for re-rooting: those vertices are already handled by the plain
    tree-update step.
    """
    if removed is not None:
        g._check_vertex(removed)
    adj = _undirected_adjacency(g, removed)
    bridges, articulation = _bridges_and_articulation(adj)
    pruned = {
        v: [w for w in ws if pair(v, w) not in bridges] for v, ws in adj.items()
    }
    comps = _connected_components(pruned)
    return CutStructure(removed, frozenset(bridges), frozenset(articulation), tuple(comps))


def induced_subgraph(
    g: InformationFlowGraph, vertices: Iterable[int]
) -> tuple[InformationFlowGraph, list[int]]:
    """Vertex-induced subgraph relabeled to 1..m.

    Returns the subgraph and the mapping: position k (0-based) holds the
    original vertex carrying new label k + 1.
    """
    old = sorted(set(vertices))
    new_of = {v: i + 1 for i, v in enumerate(old)}
    keep = set(old)
    arcs = frozenset(
        (new_of[u], new_of[v]) for u, v in g.arcs if u in keep and v in keep
    )
    return InformationFlowGraph(len(old), arcs), old
