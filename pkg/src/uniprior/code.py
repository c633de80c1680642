"""XOR index codes, decoding profiles, and exhaustive decode verification.

A tree code has one pair transmission per tree edge; the full pipeline adds
one uncoded singleton per distinct message demanded across components.
Decoding a demand (source, receiver) XORs the receiver's own message with
the transmissions along the tree path from the receiver to the source, so
per-demand cost equals the path length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .errors import TooLargeError, UndecodableError
from .graph import InformationFlowGraph, induced_subgraph, scc_decompose
from .trees import SpanningTree


@dataclass(frozen=True)
class PairTx:
    """Transmission carrying the XOR of two messages."""

    i: int
    j: int

    def to_dict(self) -> dict:
        return {"type": "pair", "i": self.i, "j": self.j}


@dataclass(frozen=True)
class SingletonTx:
    """Uncoded transmission of a single message."""

    i: int

    def to_dict(self) -> dict:
        return {"type": "single", "i": self.i}


Transmission = Union[PairTx, SingletonTx]


@dataclass(frozen=True)
class IndexCode:
    transmissions: tuple[Transmission, ...]

    def __len__(self) -> int:
        return len(self.transmissions)

    def to_dict(self) -> dict:
        return {"transmissions": [t.to_dict() for t in self.transmissions]}

    def matrix(self, n: int) -> np.ndarray:
        """Binary encoding matrix L (n x N): column k holds the messages
        XOR-ed into transmission k."""
        mat = np.zeros((n, len(self.transmissions)), dtype=np.uint8)
        for k, tx in enumerate(self.transmissions):
            if isinstance(tx, PairTx):
                mat[tx.i - 1, k] = 1
                mat[tx.j - 1, k] = 1
            else:
                mat[tx.i - 1, k] = 1
        return mat


def code_from_dict(data: dict) -> IndexCode:
    txs: list[Transmission] = []
    for t in data["transmissions"]:
        if t["type"] == "pair":
            txs.append(PairTx(int(t["i"]), int(t["j"])))
        else:
            txs.append(SingletonTx(int(t["i"])))
    return IndexCode(tuple(txs))


@dataclass(frozen=True)
class DemandPath:
    """Decode recipe for one demand: transmission indexes (0-based) whose
    XOR, together with the receiver's own message when ``uses_side_info``,
    recovers the requested message."""

    source: int
    receiver: int
    tx_indexes: tuple[int, ...]
    uses_side_info: bool

    @property
    def l(self) -> int:
        return len(self.tx_indexes)

    def to_dict(self) -> dict:
        return {
            "from": self.source,
            "to": self.receiver,
            "path": list(self.tx_indexes),
            "l": self.l,
        }


@dataclass(frozen=True)
class DecodingProfile:
    per_demand: tuple[DemandPath, ...]

    @property
    def total_tx(self) -> int:
        return sum(d.l for d in self.per_demand)

    @property
    def l_max(self) -> int:
        return max((d.l for d in self.per_demand), default=0)

    @property
    def t_single(self) -> int:
        return sum(1 for d in self.per_demand if d.l == 1)

    @property
    def demand_count(self) -> int:
        return len(self.per_demand)

    def to_dict(self) -> dict:
        return {
            "demands": [d.to_dict() for d in self.per_demand],
            "total_tx": self.total_tx,
            "l_max": self.l_max,
            "t": self.t_single,
        }


def encode(t: SpanningTree) -> IndexCode:
    """One pair transmission per tree edge, in sorted edge order so
    transmission indexes are stable across runs."""
    return IndexCode(tuple(PairTx(u, v) for u, v in t.sorted_edges()))


def decoding_profile(g: InformationFlowGraph, t: SpanningTree) -> DecodingProfile:
    """Per-demand tree paths and the aggregate transmission counts.

    The demand (i, j) is decoded starting from the receiver's own message:
    the path runs from j to i and its length is the demand's cost.
    """
    if t.n != g.n:
        raise ValueError("tree and graph have different vertex counts")
    index_of = {e: k for k, e in enumerate(t.sorted_edges())}
    demands = []
    for i, j in sorted(g.arcs, key=lambda a: (a[1], a[0])):
        edges = t.path(j, i)
        demands.append(
            DemandPath(i, j, tuple(index_of[e] for e in edges), True)
        )
    return DecodingProfile(tuple(demands))


def _transmission_adjacency(code: IndexCode, n: int) -> dict[int, list[tuple[int, int]]]:
    """Graph over messages 0..n where 0 is the all-known virtual vertex:
    pair transmissions join their endpoints, singletons join vertex 0."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n + 1)}
    for k, tx in enumerate(code.transmissions):
        if isinstance(tx, PairTx):
            adj[tx.i].append((tx.j, k))
            adj[tx.j].append((tx.i, k))
        else:
            adj[tx.i].append((0, k))
            adj[0].append((tx.i, k))
    for v in adj:
        adj[v].sort()
    return adj


def _decode_one(adj, i: int, j: int) -> DemandPath:
    """BFS from the requested message towards either the receiver's own
    message (side-information decode) or the virtual all-known vertex
    (pure-transmission decode); ties prefer the side-information route."""
    parent: dict[int, tuple[int, int]] = {i: (-1, -1)}
    dist = {i: 0}
    frontier = [i]
    while frontier and not (j in dist and 0 in dist):
        nxt = []
        for v in frontier:
            for w, k in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = (v, k)
                    nxt.append(w)
        frontier = nxt
    if j in dist and (0 not in dist or dist[j] <= dist[0]):
        end, side = j, True
    elif 0 in dist:
        end, side = 0, False
    else:
        raise UndecodableError(
            f"demand ({i}, {j}): no transmissions connect message {i} "
            f"to receiver {j}'s side information"
        )
    txs = []
    v = end
    while v != i:
        v, k = parent[v]
        txs.append(k)
    txs.reverse()
    return DemandPath(i, j, tuple(txs), side)


def decode_paths(g: InformationFlowGraph, code: IndexCode) -> tuple[DemandPath, ...]:
    """Shortest decode recipe for every demand."""
    adj = _transmission_adjacency(code, g.n)
    return tuple(
        _decode_one(adj, i, j) for i, j in sorted(g.arcs, key=lambda a: (a[1], a[0]))
    )


@dataclass(frozen=True)
class DemandCheck:
    source: int
    receiver: int
    ok: bool
    detail: str

    def to_dict(self) -> dict:
        return {
            "from": self.source,
            "to": self.receiver,
            "ok": self.ok,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    vectors_checked: int
    checks: tuple[DemandCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "vectors_checked": self.vectors_checked,
            "demands": [c.to_dict() for c in self.checks],
        }


def verify_code(g: InformationFlowGraph, code: IndexCode) -> VerificationReport:
    """Exhaustively check every demand against every message vector.

    Each demand's decode recipe is evaluated for all 2^n binary message
    vectors; a demand with no recipe at all is reported as failed.
    """
    if g.n > 20:
        raise TooLargeError(f"exhaustive verification capped at n <= 20, got {g.n}")
    vectors = ((np.arange(2 ** g.n, dtype=np.uint32)[:, None] >> np.arange(g.n)) & 1).astype(np.uint8)
    codewords = vectors @ code.matrix(g.n) % 2
    adj = _transmission_adjacency(code, g.n)
    checks = []
    for i, j in sorted(g.arcs, key=lambda a: (a[1], a[0])):
        try:
            path = _decode_one(adj, i, j)
        except UndecodableError as err:
            checks.append(DemandCheck(i, j, False, str(err)))
            continue
        est = codewords[:, list(path.tx_indexes)].sum(axis=1) % 2
        if path.uses_side_info:
            est = (est + vectors[:, j - 1]) % 2
        ok = bool((est == vectors[:, i - 1]).all())
        terms = ([f"x_{j}"] if path.uses_side_info else []) + [
            f"c_{k}" for k in path.tx_indexes
        ]
        checks.append(
            DemandCheck(i, j, ok, " + ".join(terms) if ok else "decode mismatch")
        )
    return VerificationReport(2 ** g.n, tuple(checks))


def full_encode(
    g: InformationFlowGraph,
    tree_alg: Callable[[InformationFlowGraph], SpanningTree],
) -> IndexCode:
    """Pipeline for general digraphs: a tree code per strongly connected
    component of two or more vertices, plus one singleton per distinct
    message demanded across component boundaries.

    Two receivers demanding the same cross-component message share its
    singleton; deduplication preserves decodability and never lengthens
    the code.
    """
    dec = scc_decompose(g)
    txs: list[Transmission] = []
    for comp in dec.components:
        if len(comp) < 2:
            continue
        sub, old = induced_subgraph(g, comp)
        t = tree_alg(sub)
        for a, b in t.sorted_edges():
            u, v = old[a - 1], old[b - 1]
            txs.append(PairTx(min(u, v), max(u, v)))
    for msg in sorted({u for u, _ in dec.leftover_arcs}):
        txs.append(SingletonTx(msg))
    return IndexCode(tuple(txs))


def profile_for_code(g: InformationFlowGraph, code: IndexCode) -> DecodingProfile:
    """Decoding profile of an arbitrary code via its decode recipes."""
    return DecodingProfile(decode_paths(g, code))
