"""Exact square / 3-path census and the Robins-Alexander coefficient.

The coefficient is 4 * squares / three_paths: the fraction of 3-edge
paths whose closing edge exists.  Counts are of distinct unordered
subgraphs.  A zero-path graph has an undefined coefficient, kept as
``None`` (serialized "nan" in CSV, null in JSON) rather than 0.0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CountOverflowError, TooLargeError
from .graph_core import BipartiteGraph

__all__ = [
    "ClusteringCensus",
    "count_three_paths",
    "count_squares",
    "robins_alexander",
    "clustering_census",
    "brute_force_census",
]

_U64_MAX = 2**64 - 1
_BRUTE_FORCE_NODE_CAP = 64


@dataclass(frozen=True)
class ClusteringCensus:
    squares: int
    three_paths: int
    coefficient: Optional[float]

    @staticmethod
    def from_counts(squares: int, three_paths: int) -> "ClusteringCensus":
        if squares > _U64_MAX or three_paths > _U64_MAX:
            raise CountOverflowError(
                f"census count exceeds u64: squares={squares}, paths={three_paths}"
            )
        coeff = 4.0 * squares / three_paths if three_paths > 0 else None
        return ClusteringCensus(squares, three_paths, coeff)

    def coefficient_str(self, decimals: int = 6) -> str:
        return "nan" if self.coefficient is None else f"{self.coefficient:.{decimals}f}"


def count_three_paths(graph: BipartiteGraph) -> int:
    """Distinct 3-edge simple paths, each counted once.

    Every 3-path has a unique middle edge, and bipartiteness rules out
    endpoint collisions, so the count is the sum over edges (u, v) of
    (deg(u) - 1) * (deg(v) - 1).
    """
    firm_deg = [len(a) for a in graph.firm_adj]
    total = 0
    for adj in graph.org_adj:
        dv = len(adj)
        if dv == 0:
            continue
        total += (dv - 1) * sum(firm_deg[u] - 1 for u in adj)
    if total > _U64_MAX:
        raise CountOverflowError(f"three-path count exceeds u64: {total}")
    return total


def _bit_matrix(adj, n_other: int) -> np.ndarray:
    """Pack neighbor lists into a (n, words) uint64 bitset matrix."""
    words = max(1, (n_other + 63) // 64)
    m = np.zeros((len(adj), words), dtype=np.uint64)
    for i, nbrs in enumerate(adj):
        for j in nbrs:
            m[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
    return m


def count_squares(graph: BipartiteGraph) -> int:
    """Distinct 4-cycles, each counted once.

    Accumulates C(codegree, 2) over unordered node pairs on the smaller
    side; each square contains exactly one pair from each side, so the
    side choice does not change the count.  Codegrees come from bitset
    intersections packed over the larger side.
    """
    if graph.n_orgs() <= graph.n_firms():
        adj, n_other = graph.org_adj, graph.n_firms()
    else:
        adj, n_other = graph.firm_adj, graph.n_orgs()
    n = len(adj)
    if n < 2:
        return 0
    m = _bit_matrix(adj, n_other)
    total = 0
    for i in range(n - 1):
        if not adj[i]:
            continue
        co = np.bitwise_count(m[i + 1 :] & m[i]).sum(axis=1, dtype=np.int64)
        # sum of C(c, 2) over pairs involving node i
        total += int((co * (co - 1) // 2).sum())
    if total > _U64_MAX:
        raise CountOverflowError(f"square count exceeds u64: {total}")
    return total


def robins_alexander(graph: BipartiteGraph) -> Optional[float]:
    """4 * squares / three_paths, or None when there are no 3-paths."""
    return clustering_census(graph).coefficient


def clustering_census(graph: BipartiteGraph) -> ClusteringCensus:
    return ClusteringCensus.from_counts(count_squares(graph), count_three_paths(graph))


def brute_force_census(graph: BipartiteGraph) -> ClusteringCensus:
    """Oracle census by explicit subgraph enumeration.

    Walk-based: 3-paths are enumerated as ordered 4-node walks with
    distinct nodes and divided by two; squares check all four edges over
    explicit 2-firm x 2-org combinations.  Capped at 64 nodes.
    """
    n = graph.n_firms() + graph.n_orgs()
    if n > _BRUTE_FORCE_NODE_CAP:
        raise TooLargeError(f"{n} nodes exceeds brute-force cap of {_BRUTE_FORCE_NODE_CAP}")

    firm_sets = [set(a) for a in graph.firm_adj]
    org_sets = [set(a) for a in graph.org_adj]

    ordered_paths = 0
    # ordered walk a-b-c-d, alternating sides, starting from either side
    for a in range(graph.n_firms()):
        for b in firm_sets[a]:
            for c in org_sets[b]:
                if c == a:
                    continue
                for d in firm_sets[c]:
                    if d != b:
                        ordered_paths += 1
    for a in range(graph.n_orgs()):
        for b in org_sets[a]:
            for c in firm_sets[b]:
                if c == a:
                    continue
                for d in org_sets[c]:
                    if d != b:
                        ordered_paths += 1
    assert ordered_paths % 2 == 0
    three_paths = ordered_paths // 2

    squares = 0
    for f1, f2 in itertools.combinations(range(graph.n_firms()), 2):
        for o1, o2 in itertools.combinations(range(graph.n_orgs()), 2):
            if (
                o1 in firm_sets[f1]
                and o2 in firm_sets[f1]
                and o1 in firm_sets[f2]
                and o2 in firm_sets[f2]
            ):
                squares += 1

    return ClusteringCensus.from_counts(squares, three_paths)
