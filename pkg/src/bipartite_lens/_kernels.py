"""Numba kernel for the insert-only incremental census.

One call processes a full start-year row: edges arrive grouped by end
year, and after each year's batch the running square / 3-path / edge
counts are recorded.  Firms carry an org-bitmask so the square delta of
an inserted edge (u, v) is a popcount sum over v's current firm
neighbors; all degree reads happen before the insertion.
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

__all__ = ["run_row"]


@njit(uint64(uint64), cache=True, inline="always")
def _popcount64(x):
    x = x - ((x >> uint64(1)) & uint64(0x5555555555555555))
    x = (x & uint64(0x3333333333333333)) + ((x >> uint64(2)) & uint64(0x3333333333333333))
    x = (x + (x >> uint64(4))) & uint64(0x0F0F0F0F0F0F0F0F)
    return (x * uint64(0x0101010101010101)) >> uint64(56)


@njit(cache=True, nogil=True)
def run_row(firm_idx, org_idx, year_offsets, n_firms, n_orgs):
    """Process one row of the window matrix.

    firm_idx / org_idx: edge endpoints in arrival order, grouped by year.
    year_offsets: len n_years + 1; edges of year k occupy
    [year_offsets[k], year_offsets[k+1]).  Duplicate pairs across years
    are skipped via the bitmask.  Returns (squares, paths, edge_count)
    arrays, one entry per year, as the cumulative census after that
    year's insertions.
    """
    n_years = len(year_offsets) - 1
    words = (n_orgs + 63) // 64

    masks = np.zeros((n_firms, words), dtype=np.uint64)
    firm_deg = np.zeros(n_firms, dtype=np.int64)
    org_deg = np.zeros(n_orgs, dtype=np.int64)
    # flat adjacency, preallocated to the row's edge budget
    n_edges_total = len(firm_idx)
    org_adj = np.empty(n_edges_total, dtype=np.int64)
    org_start = np.zeros(n_orgs + 1, dtype=np.int64)
    firm_adj = np.empty(n_edges_total, dtype=np.int64)
    firm_start = np.zeros(n_firms + 1, dtype=np.int64)

    # per-org / per-firm capacity layout from this row's (deduped-later) edges
    for e in range(n_edges_total):
        org_start[org_idx[e] + 1] += 1
        firm_start[firm_idx[e] + 1] += 1
    for v in range(n_orgs):
        org_start[v + 1] += org_start[v]
    for u in range(n_firms):
        firm_start[u + 1] += firm_start[u]

    out_squares = np.zeros(n_years, dtype=np.uint64)
    out_paths = np.zeros(n_years, dtype=np.uint64)
    out_edges = np.zeros(n_years, dtype=np.int64)

    squares = uint64(0)
    paths = uint64(0)
    edges = 0

    for k in range(n_years):
        for e in range(year_offsets[k], year_offsets[k + 1]):
            u = firm_idx[e]
            v = org_idx[e]
            word = uint64(v >> 6)
            bit = uint64(1) << uint64(v & 63)
            if masks[u, word] & bit:
                continue  # already inserted in an earlier year of this row

            du = firm_deg[u]
            dv = org_deg[v]
            mu = masks[u]

            d_squares = uint64(0)
            sum_dx = 0
            for t in range(org_start[v], org_start[v] + dv):
                up = org_adj[t]
                acc = uint64(0)
                for w in range(words):
                    acc += _popcount64(masks[up, w] & mu[w])
                d_squares += acc
                sum_dx += firm_deg[up]
            sum_dw = 0
            for t in range(firm_start[u], firm_start[u] + du):
                sum_dw += org_deg[firm_adj[t]]

            # middle-edge paths + end-edge extensions on both sides
            paths += uint64(du * dv + (sum_dw - du) + (sum_dx - dv))
            squares += d_squares
            edges += 1

            org_adj[org_start[v] + dv] = u
            firm_adj[firm_start[u] + du] = v
            org_deg[v] = dv + 1
            firm_deg[u] = du + 1
            masks[u, word] |= bit

        out_squares[k] = squares
        out_paths[k] = paths
        out_edges[k] = edges

    return out_squares, out_paths, out_edges
