"""Window scan: the clustering census for every (start, end) year pair.

Window bounds are inclusive calendar years.  The scan covers the
contiguous year range of the store, one cell per start <= end pair.
Rows (fixed start year) are computed by the insert-only incremental
engine; a naive per-cell recomputation path exists as oracle and
baseline.  Optional exclusion drops all projects starting in one year
and removes that year from the axis.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .clustering import ClusteringCensus, clustering_census
from .errors import EmptyStoreError, WindowOutOfRangeError
from .graph_core import from_pairs
from .ingest import TimedEdgeStore

__all__ = [
    "WindowSpec",
    "WindowCell",
    "WindowMatrix",
    "window_edges",
    "check_window_overlap",
    "scan_all_windows",
    "scan_all_windows_naive",
    "incremental_row_scan",
    "matrix_to_rows",
]


@dataclass(frozen=True)
class WindowSpec:
    start_year: int
    end_year: int

    def __post_init__(self):
        if self.start_year > self.end_year:
            raise ValueError(
                f"window start {self.start_year} after end {self.end_year}"
            )


@dataclass(frozen=True)
class WindowCell:
    census: ClusteringCensus
    edge_count: int


@dataclass(frozen=True)
class WindowMatrix:
    """Upper-triangular grid of per-window censuses.

    ``years`` is the ascending axis (the excluded year, if any, is
    absent); ``cells`` has exactly one entry per (start, end) pair with
    start <= end over ``years``.
    """

    years: tuple[int, ...]
    cells: dict[tuple[int, int], WindowCell]
    excluded_year: Optional[int] = None


def window_edges(store: TimedEdgeStore, window: WindowSpec) -> set[tuple[str, str]]:
    """Pairs with >= 1 project starting inside the window (both bounds inclusive).

    Windows reaching past the store's year range simply match fewer (or
    no) projects; callers wanting a hard range check should use
    :func:`check_window_overlap`.
    """
    if store.is_empty():
        raise WindowOutOfRangeError("store is empty")
    out: set[tuple[str, str]] = set()
    for y in range(window.start_year, window.end_year + 1):
        out.update(store.year_index.get(y, ()))
    return out


def check_window_overlap(store: TimedEdgeStore, window: WindowSpec) -> None:
    """Raise :class:`WindowOutOfRangeError` if the window misses the store's range."""
    if store.is_empty():
        raise WindowOutOfRangeError("store is empty")
    lo, hi = store.year_range
    if window.end_year < lo or window.start_year > hi:
        raise WindowOutOfRangeError(
            f"window [{window.start_year}, {window.end_year}] outside "
            f"store range [{lo}, {hi}]"
        )


def _census_of_pairs(pairs) -> WindowCell:
    graph = from_pairs(pairs)
    return WindowCell(clustering_census(graph), len(pairs))


@dataclass
class _Interned:
    """Store pairs interned to dense indices, grouped by year."""

    years: list[int]
    year_firm: dict[int, np.ndarray]
    year_org: dict[int, np.ndarray]
    n_firms: int
    n_orgs: int


def _intern(store: TimedEdgeStore) -> _Interned:
    lo, hi = store.year_range
    firm_ix = {f: i for i, f in enumerate(store.firm_ids())}
    org_ix = {o: i for i, o in enumerate(store.org_ids())}
    year_firm = {}
    year_org = {}
    for y in range(lo, hi + 1):
        pairs = store.year_index.get(y, [])
        year_firm[y] = np.fromiter(
            (firm_ix[f] for f, _ in pairs), dtype=np.int64, count=len(pairs)
        )
        year_org[y] = np.fromiter(
            (org_ix[o] for _, o in pairs), dtype=np.int64, count=len(pairs)
        )
    return _Interned(
        list(range(lo, hi + 1)), year_firm, year_org, len(firm_ix), len(org_ix)
    )


def _run_row(interned: _Interned, start_year: int, end_years: list[int]):
    chunks_f = []
    chunks_o = []
    offsets = [0]
    prev = start_year
    for e in end_years:
        f_parts = [interned.year_firm[y] for y in range(prev, e + 1)]
        o_parts = [interned.year_org[y] for y in range(prev, e + 1)]
        chunks_f.extend(f_parts)
        chunks_o.extend(o_parts)
        offsets.append(offsets[-1] + sum(len(p) for p in f_parts))
        prev = e + 1
    firm_idx = np.concatenate(chunks_f) if chunks_f else np.empty(0, dtype=np.int64)
    org_idx = np.concatenate(chunks_o) if chunks_o else np.empty(0, dtype=np.int64)
    return _kernels.run_row(
        firm_idx,
        org_idx,
        np.asarray(offsets, dtype=np.int64),
        interned.n_firms,
        interned.n_orgs,
    )


def incremental_row_scan(
    store: TimedEdgeStore, start_year: int, end_years: list[int]
) -> list[ClusteringCensus]:
    """Censuses for windows [start_year, e] for each ascending end year.

    The window only grows, so each distinct pair is inserted once and
    square / 3-path counts are updated in place; results match naive
    per-window recomputation exactly.
    """
    if store.is_empty():
        raise EmptyStoreError("cannot scan an empty store")
    if end_years and start_year > end_years[0]:
        raise ValueError("start_year must not exceed the first end year")
    interned = _intern(store)
    squares, paths, _ = _run_row(interned, start_year, list(end_years))
    return [
        ClusteringCensus.from_counts(int(s), int(p)) for s, p in zip(squares, paths)
    ]


def scan_all_windows(
    store: TimedEdgeStore,
    exclude_year: Optional[int] = None,
    jobs: int = 1,
) -> WindowMatrix:
    """One census per (start, end) pair over the store's year range.

    With ``exclude_year`` set, projects starting in that year are
    dropped before scanning and the year disappears from the axis.
    Rows are independent; ``jobs`` > 1 computes them in a thread pool
    with identical output.
    """
    if store.is_empty():
        raise EmptyStoreError("cannot scan an empty store")
    if exclude_year is not None:
        store = store.without_year(exclude_year)
        if store.is_empty():
            raise EmptyStoreError(f"store is empty after excluding {exclude_year}")

    interned = _intern(store)
    years = [y for y in interned.years if y != exclude_year]

    def row(i: int):
        start = years[i]
        return _run_row(interned, start, years[i:])

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(row, range(len(years))))
    else:
        results = [row(i) for i in range(len(years))]

    cells: dict[tuple[int, int], WindowCell] = {}
    for i, (squares, paths, edges) in enumerate(results):
        for k, end in enumerate(years[i:]):
            cells[(years[i], end)] = WindowCell(
                ClusteringCensus.from_counts(int(squares[k]), int(paths[k])),
                int(edges[k]),
            )
    return WindowMatrix(tuple(years), cells, exclude_year)


def scan_all_windows_naive(
    store: TimedEdgeStore, exclude_year: Optional[int] = None
) -> WindowMatrix:
    """Oracle / baseline: rebuild the graph and census for every cell."""
    if store.is_empty():
        raise EmptyStoreError("cannot scan an empty store")
    if exclude_year is not None:
        store = store.without_year(exclude_year)
        if store.is_empty():
            raise EmptyStoreError(f"store is empty after excluding {exclude_year}")
    lo, hi = store.year_range
    years = [y for y in range(lo, hi + 1) if y != exclude_year]
    cells = {}
    for i, s in enumerate(years):
        for e in years[i:]:
            pairs = window_edges(store, WindowSpec(s, e))
            cells[(s, e)] = _census_of_pairs(pairs)
    return WindowMatrix(tuple(years), cells, exclude_year)


def matrix_to_rows(
    matrix: WindowMatrix, mask_year: Optional[int] = None
) -> list[dict]:
    """Flatten a matrix to records ordered by (start_year, end_year).

    ``mask_year`` blanks the coefficient (to None) of every cell whose
    window contains that year, leaving counts and other cells untouched.
    """
    rows = []
    for (s, e) in sorted(matrix.cells):
        cell = matrix.cells[(s, e)]
        coeff = cell.census.coefficient
        if mask_year is not None and s <= mask_year <= e:
            coeff = None
        rows.append(
            {
                "start_year": s,
                "end_year": e,
                "coefficient": coeff,
                "squares": cell.census.squares,
                "three_paths": cell.census.three_paths,
                "edge_count": cell.edge_count,
            }
        )
    return rows
