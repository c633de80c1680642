"""Exhaustive census of strongly connected digraphs on up to five vertices.

Enumerates every labeled digraph (no self-loops), keeps the strongly
connected ones, and dedupes them up to isomorphism by the minimum adjacency
bit-string over all vertex permutations -- brute force, but dependency-free
and exact at this scale.  Each isomorphism class gets the exact optimum from
the tree oracle, both lower bounds, and the transmissions used by the tree
builders; the sweep aggregates those per arc count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .code import decoding_profile
from .errors import NonTreeUnionError, NotStronglyConnectedError, TooLargeError
from .graph import InformationFlowGraph
from .oracle import all_tree_profiles
from .trees import algorithm1, algorithm3, algorithm5

CENSUS_MAX_N = 5


def _arc_slots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def _permutation_tables(n: int) -> np.ndarray:
    """For each vertex permutation, the slot gather table: bit k of the
    relabeled graph is bit table[p, k] of the original."""
    slots = _arc_slots(n)
    slot_index = {a: k for k, a in enumerate(slots)}
    perms = list(itertools.permutations(range(1, n + 1)))
    table = np.zeros((len(perms), len(slots)), dtype=np.int64)
    for p, perm in enumerate(perms):
        # perm maps old label v -> new label perm[v-1]; invert it.
        inv = {perm[v - 1]: v for v in range(1, n + 1)}
        for k, (a, b) in enumerate(slots):
            table[p, k] = slot_index[(inv[a], inv[b])]
    return table


def _strongly_connected_mask(bits: np.ndarray, n: int) -> np.ndarray:
    """Vectorized strong-connectivity test for a (M, n*(n-1)) bit matrix."""
    m = bits.shape[0]
    adj = np.zeros((m, n, n), dtype=np.uint8)
    for k, (a, b) in enumerate(_arc_slots(n)):
        adj[:, a - 1, b - 1] = bits[:, k]
    closure = adj | np.eye(n, dtype=np.uint8)
    # Squaring log2(n) times covers all paths of length < n.
    steps = max(1, int(np.ceil(np.log2(max(n, 2)))))
    for _ in range(steps):
        closure = (closure | (np.matmul(closure, closure) > 0)).astype(np.uint8)
    return closure.all(axis=(1, 2))


def enumerate_classes(n: int, progress: Optional[Callable[[str], None]] = None) -> list[int]:
    """Canonical masks of all strongly connected isomorphism classes."""
    if not (2 <= n <= CENSUS_MAX_N):
        raise TooLargeError(f"census supports 2 <= n <= {CENSUS_MAX_N}, got {n}")
    slots = _arc_slots(n)
    total = 1 << len(slots)
    masks = np.arange(total, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(len(slots))) & 1).astype(np.uint8)

    # Cheap pruning first: strong connectivity needs in- and out-degree >= 1.
    out_deg = np.zeros((total, n), dtype=np.uint8)
    in_deg = np.zeros((total, n), dtype=np.uint8)
    for k, (a, b) in enumerate(slots):
        out_deg[:, a - 1] += bits[:, k]
        in_deg[:, b - 1] += bits[:, k]
    alive = (out_deg > 0).all(axis=1) & (in_deg > 0).all(axis=1)
    if progress:
        progress(f"{int(alive.sum())} of {total} masks pass the degree prune")

    masks = masks[alive]
    bits = bits[alive]
    sc = _strongly_connected_mask(bits, n)
    masks = masks[sc]
    bits = bits[sc]
    if progress:
        progress(f"{len(masks)} labeled strongly connected digraphs")

    weights = (np.int64(1) << np.arange(len(slots))).astype(np.int64)
    canonical = np.full(len(masks), np.iinfo(np.int64).max, dtype=np.int64)
    for table_row in _permutation_tables(n):
        relabeled = bits[:, table_row] @ weights
        np.minimum(canonical, relabeled, out=canonical)
    classes = np.unique(canonical)
    if progress:
        progress(f"{len(classes)} isomorphism classes")
    return [int(c) for c in classes]


def mask_to_graph(mask: int, n: int) -> InformationFlowGraph:
    slots = _arc_slots(n)
    arcs = frozenset(slots[k] for k in range(len(slots)) if (mask >> k) & 1)
    return InformationFlowGraph(n, arcs)


@dataclass(frozen=True)
class CensusRecord:
    n: int
    arcs: tuple[tuple[int, int], ...]
    arc_count: int
    t_star: int
    lb1: int
    lb2: Optional[int]
    alg1_tx: int
    alg3_tx: int
    alg5_tx: Optional[int]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "arcs": [list(a) for a in self.arcs],
            "arc_count": self.arc_count,
            "t_star": self.t_star,
            "lb1": self.lb1,
            "lb2": self.lb2,
            "alg1_tx": self.alg1_tx,
            "alg3_tx": self.alg3_tx,
            "alg5_tx": self.alg5_tx,
        }


def _oracle_via_profiles(g: InformationFlowGraph) -> int:
    """Oracle optimum using the cached per-size tree profiles."""
    _, dist = all_tree_profiles(g.n)
    arcs = sorted(g.arcs)
    per_arc = dist[:, [u - 1 for u, _ in arcs], [v - 1 for _, v in arcs]]
    ok = (per_arc <= 2).all(axis=1)
    totals = per_arc.sum(axis=1, dtype=np.int64)
    return int(totals[ok].min())


def census(
    n: int, progress: Optional[Callable[[str], None]] = None
) -> list[CensusRecord]:
    """One record per strongly connected isomorphism class."""
    from .graph import simplify

    records = []
    for mask in enumerate_classes(n, progress):
        g = mask_to_graph(mask, n)
        view = simplify(g)
        e = len(g.arcs)
        lb1 = e + len(view.edges_u) - (n - 1)
        lb2 = 2 * (e - n + 1) if view.d >= n - 1 else None
        t_star = _oracle_via_profiles(g)
        alg1_tx = decoding_profile(g, algorithm1(g)).total_tx
        alg3_tx = decoding_profile(g, algorithm3(g)).total_tx
        try:
            alg5_tx = decoding_profile(g, algorithm5(g)).total_tx
        except (NonTreeUnionError, NotStronglyConnectedError):
            alg5_tx = None
        records.append(
            CensusRecord(
                n,
                tuple(sorted(g.arcs)),
                e,
                t_star,
                lb1,
                lb2,
                alg1_tx,
                alg3_tx,
                alg5_tx,
            )
        )
    return records


@dataclass(frozen=True)
class SweepRow:
    arc_count: int
    class_count: int
    t_avg: float
    lb1_avg: float
    lb2: Optional[int]


def tightness_sweep(records: list[CensusRecord]) -> list[SweepRow]:
    """Average optimum and first bound per arc count; the second bound is
    constant per arc count and only emitted where some class defines it."""
    rows = []
    by_count: dict[int, list[CensusRecord]] = {}
    for r in records:
        by_count.setdefault(r.arc_count, []).append(r)
    for arc_count in sorted(by_count):
        group = by_count[arc_count]
        lb2_values = [r.lb2 for r in group if r.lb2 is not None]
        rows.append(
            SweepRow(
                arc_count,
                len(group),
                sum(r.t_star for r in group) / len(group),
                sum(r.lb1 for r in group) / len(group),
                lb2_values[0] if lb2_values else None,
            )
        )
    return rows


def sweep_csv(n: int, rows: list[SweepRow]) -> str:
    lines = ["n,arc_count,class_count,T_avg,LB1_avg,LB2"]
    for r in rows:
        lb2 = "" if r.lb2 is None else str(r.lb2)
        lines.append(
            f"{n},{r.arc_count},{r.class_count},{r.t_avg:.6g},{r.lb1_avg:.6g},{lb2}"
        )
    return "\n".join(lines) + "\n"
