"""Two-mode collaboration network analysis toolkit.

Builds bipartite firm / research-organization graphs from timestamped
project records, computes rank-size degree distributions with optional
power-law fits, runs an exact square / 3-path census behind the
Robins-Alexander clustering coefficient, and scans that coefficient
over every (start-year, end-year) window.  Seeded synthetic generators
substitute for proprietary data.
"""

__version__ = "0.1.0"

from .clustering import (
    ClusteringCensus,
    brute_force_census,
    clustering_census,
    count_squares,
    count_three_paths,
    robins_alexander,
)
from .degree_stats import (
    ModeSummary,
    PowerLawFit,
    RankSizeDistribution,
    fit_power_law,
    log_log_points,
    mode_summary,
    rank_size,
    sample_power_law,
)
from .graph_core import (
    BipartiteGraph,
    GraphBuilder,
    Mode,
    NodeRef,
    degree_sequence,
    neighbors,
)
from .ingest import (
    InputFormat,
    ProjectRecord,
    RecordError,
    TimedEdgeStore,
    build_static_graph,
    build_timed_store,
    parse_records,
    records_to_csv,
)
from .synth import (
    DEMO_SHIFT_CONFIG,
    LARGE_SCALE_CONFIG,
    GeneratorConfig,
    ShiftSpec,
    gen_er_bipartite,
    gen_pa_stream,
    gen_regime_shift_stream,
)
from .temporal import (
    WindowMatrix,
    WindowSpec,
    incremental_row_scan,
    matrix_to_rows,
    scan_all_windows,
    scan_all_windows_naive,
    window_edges,
)
