"""Exhaustive spanning-tree oracle.

Enumerates all n^(n-2) labeled spanning trees of the complete graph via
Pruefer sequences, keeps those whose worst per-demand cost is at most two,
and minimizes the total number of transmissions used in decoding.  Pair
transmissions along a spanning tree are the only shape a minimum-length
code for a strongly connected component can take, so this search space is
exhaustive for the metric.

Capped at n <= 9 (9^7 = 4.78M trees); larger requests are refused rather
than approximated.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotStronglyConnectedError, TooLargeError
from .graph import InformationFlowGraph, pair
from .trees import SpanningTree

ORACLE_MAX_N = 9
_FAR = 99  # sentinel distance for "more than two hops"
_CACHE_MAX_N = 7
_BATCH = 200_000


def prufer_to_edges(seq, n: int) -> list[tuple[int, int]]:
    """Decode a Pruefer sequence over 1..n: repeatedly join the smallest
    remaining leaf to the next sequence entry, then wire the last two."""
    degree = [0] * (n + 1)
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 0]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append(pair(leaf, v))
        degree[v] -= 1
        if degree[v] == 0:
            heapq.heappush(leaves, v)
    a = heapq.heappop(leaves)
    b = heapq.heappop(leaves)
    edges.append(pair(a, b))
    return edges


def _distance_profiles(edge_batch: list[list[tuple[int, int]]], n: int) -> np.ndarray:
    """Distance-or-far matrix per tree: 0 on the diagonal, 1 for tree
    edges, 2 for two-hop pairs, _FAR beyond."""
    m = len(edge_batch)
    adj = np.zeros((m, n, n), dtype=np.uint8)
    for t, edges in enumerate(edge_batch):
        for u, v in edges:
            adj[t, u - 1, v - 1] = 1
            adj[t, v - 1, u - 1] = 1
    two_hop = np.matmul(adj, adj) > 0
    eye = np.eye(n, dtype=bool)
    dist = np.full((m, n, n), _FAR, dtype=np.int16)
    dist[two_hop & ~adj.astype(bool) & ~eye] = 2
    dist[adj.astype(bool)] = 1
    dist[:, eye] = 0
    return dist


def _tree_batches(n: int):
    """Yield (edge lists, distance profiles) over all trees on n vertices."""
    if n == 1:
        yield [[]], _distance_profiles([[]], 1)
        return
    seqs = itertools.product(range(1, n + 1), repeat=n - 2)
    while True:
        chunk = list(itertools.islice(seqs, _BATCH))
        if not chunk:
            return
        edge_batch = [prufer_to_edges(s, n) for s in chunk]
        yield edge_batch, _distance_profiles(edge_batch, n)


@lru_cache(maxsize=None)
def all_tree_profiles(n: int) -> tuple[tuple[tuple[tuple[int, int], ...], ...], np.ndarray]:
    """All labeled trees on n vertices with their distance profiles,
    cached for the sizes the census sweeps repeatedly."""
    if n > _CACHE_MAX_N:
        raise TooLargeError(f"tree profile cache capped at n <= {_CACHE_MAX_N}")
    edge_lists: list[tuple[tuple[int, int], ...]] = []
    dists = []
    for edge_batch, dist in _tree_batches(n):
        edge_lists.extend(tuple(sorted(e)) for e in edge_batch)
        dists.append(dist)
    return tuple(edge_lists), np.concatenate(dists, axis=0)


@dataclass(frozen=True)
class OracleResult:
    optimal_total_tx: int
    optimal_tree: SpanningTree
    trees_examined: int
    feasible_count: int

    def to_dict(self) -> dict:
        return {
            "optimal_total_tx": self.optimal_total_tx,
            "optimal_tree": self.optimal_tree.to_dict(),
            "trees_examined": self.trees_examined,
            "feasible_count": self.feasible_count,
        }


def oracle_optimal(g: InformationFlowGraph) -> OracleResult:
    """Exact minimum total transmissions over all spanning trees with
    per-demand cost at most two, with a deterministic witness (the
    lexicographically least optimal edge list)."""
    if not g.is_strongly_connected:
        raise NotStronglyConnectedError("oracle needs a strongly connected graph")
    if g.n > ORACLE_MAX_N:
        raise TooLargeError(f"oracle capped at n <= {ORACLE_MAX_N}, got {g.n}")
    n = g.n
    if n == 1:
        return OracleResult(0, SpanningTree(1, frozenset(), 1), 1, 1)
    arcs = sorted(g.arcs)
    rows = np.array([u - 1 for u, _ in arcs])
    cols = np.array([v - 1 for _, v in arcs])

    best_total: int | None = None
    best_edges: tuple[tuple[int, int], ...] | None = None
    examined = 0
    feasible = 0
    for edge_batch, dist in _tree_batches(n):
        examined += len(edge_batch)
        per_arc = dist[:, rows, cols]
        ok = (per_arc <= 2).all(axis=1)
        feasible += int(ok.sum())
        if not ok.any():
            continue
        totals = per_arc.sum(axis=1, dtype=np.int64)
        totals[~ok] = np.iinfo(np.int64).max
        batch_best = int(totals.min())
        if best_total is None or batch_best <= best_total:
            for idx in np.flatnonzero(totals == batch_best):
                cand = tuple(sorted(edge_batch[int(idx)]))
                if (
                    best_total is None
                    or batch_best < best_total
                    or cand < best_edges
                ):
                    best_total = batch_best
                    best_edges = cand
    assert best_total is not None and best_edges is not None
    tree = SpanningTree(n, frozenset(best_edges), min(best_edges[0]))
    return OracleResult(best_total, tree, examined, feasible)
