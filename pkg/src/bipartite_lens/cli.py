"""Command-line front end.

Subcommands: summary, ranksize, ra, scan, generate.  Outputs are plot
data (CSV / JSON), never images; stdout carries only data and stderr
only diagnostics.  Exit codes: 2 unreadable input / IO failure, 3 too
many malformed rows, 4 window outside data range, 5 empty store, 6
invalid generator config.

The BIPARTITE_LENS_LOG env var (error|warn|info|debug) sets stderr
verbosity; default warn.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .clustering import clustering_census
from .degree_stats import fit_power_law, mode_summary, rank_size
from .errors import (
    EmptyStoreError,
    InsufficientDataError,
    ShiftOutsideRangeError,
    UnreadableInputError,
    WindowOutOfRangeError,
)
from .graph_core import Mode, from_pairs
from .ingest import (
    InputFormat,
    build_static_graph,
    build_timed_store,
    parse_records,
    records_to_csv,
)
from .synth import GeneratorConfig, ShiftSpec, gen_er_bipartite, gen_pa_stream, gen_regime_shift_stream
from .temporal import (
    WindowSpec,
    check_window_overlap,
    matrix_to_rows,
    scan_all_windows,
    window_edges,
)

log = logging.getLogger("bipartite_lens")

EXIT_OK = 0
EXIT_IO = 2
EXIT_TOO_MANY_BAD_ROWS = 3
EXIT_WINDOW_RANGE = 4
EXIT_EMPTY_STORE = 5
EXIT_BAD_CONFIG = 6


def _setup_logging():
    level = os.environ.get("BIPARTITE_LENS_LOG", "warn").lower()
    numeric = {
        "error": logging.ERROR,
        "warn": logging.WARNING,
        "warning": logging.WARNING,
        "info": logging.INFO,
        "debug": logging.DEBUG,
    }.get(level, logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=numeric, format="%(levelname)s %(message)s")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_input(path: str, fmt_flag: str) -> tuple[bytes, InputFormat]:
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}")
    if fmt_flag == "jsonl" or (fmt_flag == "auto" and p.suffix in (".jsonl", ".ndjson")):
        fmt = InputFormat.JSONL
    else:
        fmt = InputFormat.CSV
    return raw, fmt


def _parse_input(path: str, fmt_flag: str, error_threshold: float = 0.1):
    raw, fmt = _read_input(path, fmt_flag)
    try:
        result = parse_records(raw, fmt)
    except UnreadableInputError as exc:
        raise CliError(EXIT_IO, f"unreadable input {path}: {exc}")
    total = len(result.records) + len(result.errors)
    for err in result.errors[:20]:
        log.warning("line %d: %s %s", err.line, err.kind.value, err.detail)
    if result.unknown_key_rows:
        log.warning("%d rows carried unknown keys", result.unknown_key_rows)
    if total and len(result.errors) / total > error_threshold:
        raise CliError(
            EXIT_TOO_MANY_BAD_ROWS,
            f"{len(result.errors)}/{total} rows malformed (threshold "
            f"{error_threshold:.0%})",
        )
    return result


def _write_manifest(out_path: str, command: str, params: dict, input_paths: list[str]):
    digest = hashlib.sha256()
    for p in input_paths:
        digest.update(Path(p).read_bytes())
    manifest = {
        "command": command,
        "parameters": params,
        "input_digest": digest.hexdigest(),
        "tool_version": __version__,
    }
    Path(out_path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _maybe_manifest(args, command: str, params: dict, input_paths: list[str], anchor: Optional[str]):
    if getattr(args, "manifest", False):
        target = (anchor or "run") + ".manifest.json"
        _write_manifest(target, command, params, input_paths)


# -- subcommands --------------------------------------------------------


def cmd_summary(args) -> int:
    result = _parse_input(args.input, args.format, args.error_threshold)
    graph = build_static_graph(result.records)
    s = mode_summary(graph)
    payload = {
        "records": len(result.records),
        "record_errors": len(result.errors),
        "firm_count": s.firm_count,
        "org_count": s.org_count,
        "edge_count": s.edge_count,
        "max_firm_degree": s.max_firm_degree,
        "max_org_degree": s.max_org_degree,
    }
    if args.text:
        width = max(len(k) for k in payload)
        for k, v in payload.items():
            sys.stdout.write(f"{k:<{width}}  {v}\n")
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    _maybe_manifest(args, "summary", {"input": args.input}, [args.input], None)
    return EXIT_OK


def cmd_ranksize(args) -> int:
    result = _parse_input(args.input, args.format)
    graph = build_static_graph(result.records)
    mode = Mode.FIRM if args.mode == "firm" else Mode.ORG
    dist = rank_size(graph, mode)
    lines = ["rank,degree,node_id"]
    lines += [f"{r},{d},{nid}" for r, d, nid in dist.entries]
    try:
        Path(args.output).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {args.output}: {exc}")
    if args.fit:
        degrees = [d for _, d, _ in dist.entries if d >= 1]
        try:
            fit = fit_power_law(degrees)
            fit_payload = fit.to_dict()
        except InsufficientDataError:
            fit_payload = {"error": "insufficient_data"}
        fit_path = args.fit_output or (str(args.output) + ".fit.json")
        Path(fit_path).write_text(json.dumps(fit_payload, indent=2) + "\n")
    _maybe_manifest(
        args,
        "ranksize",
        {"input": args.input, "mode": args.mode, "fit": args.fit},
        [args.input],
        str(args.output),
    )
    return EXIT_OK


def cmd_ra(args) -> int:
    result = _parse_input(args.input, args.format)
    if (args.from_year is None) != (args.to_year is None):
        raise CliError(EXIT_BAD_CONFIG, "--from and --to must be given together")
    if args.from_year is not None:
        store = build_timed_store(result.records)
        if store.is_empty():
            raise CliError(EXIT_EMPTY_STORE, "no valid records")
        try:
            window = WindowSpec(args.from_year, args.to_year)
            check_window_overlap(store, window)
            pairs = window_edges(store, window)
        except WindowOutOfRangeError as exc:
            raise CliError(EXIT_WINDOW_RANGE, str(exc))
        graph = from_pairs(pairs)
    else:
        graph = build_static_graph(result.records)
    census = clustering_census(graph)
    sys.stdout.write(
        json.dumps(
            {
                "squares": census.squares,
                "three_paths": census.three_paths,
                "coefficient": census.coefficient,
            }
        )
        + "\n"
    )
    _maybe_manifest(
        args,
        "ra",
        {"input": args.input, "from": args.from_year, "to": args.to_year},
        [args.input],
        None,
    )
    return EXIT_OK


def _matrix_csv(rows: list[dict]) -> str:
    out = ["start_year,end_year,coefficient,squares,three_paths,edge_count"]
    for r in rows:
        coeff = "nan" if r["coefficient"] is None else f"{r['coefficient']:.6f}"
        out.append(
            f"{r['start_year']},{r['end_year']},{coeff},"
            f"{r['squares']},{r['three_paths']},{r['edge_count']}"
        )
    return "\n".join(out) + "\n"


def cmd_scan(args) -> int:
    result = _parse_input(args.input, args.format)
    store = build_timed_store(result.records)
    exclude = None if args.mask_only else args.exclude_year
    mask = args.exclude_year if args.mask_only else None
    try:
        matrix = scan_all_windows(store, exclude_year=exclude, jobs=args.jobs)
    except EmptyStoreError as exc:
        raise CliError(EXIT_EMPTY_STORE, str(exc))
    rows = matrix_to_rows(matrix, mask_year=mask)
    try:
        Path(args.output).write_text(_matrix_csv(rows))
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {args.output}: {exc}")
    _maybe_manifest(
        args,
        "scan",
        {
            "input": args.input,
            "exclude_year": args.exclude_year,
            "mask_only": args.mask_only,
        },
        [args.input],
        str(args.output),
    )
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        if args.generator == "er":
            graph = gen_er_bipartite(args.firms, args.orgs, args.p, args.seed)
            effective = {
                "generator": "er",
                "firms": args.firms,
                "orgs": args.orgs,
                "p": args.p,
                "seed": args.seed,
                "year": args.year,
            }
            # edge list as canonical records with a single synthetic year
            lines = ["project_id,firm_id,org_id,start_year"]
            for k, (fid, oid) in enumerate(graph.canonical_edge_list()):
                lines.append(f"P{k:06d},{fid},{oid},{args.year}")
            body = "\n".join(lines) + "\n"
        else:
            shift = None
            if args.generator == "shift":
                shift = ShiftSpec(
                    shift_year=args.shift_year,
                    hot_firm_count=args.hot_firms,
                    hot_org_count=args.hot_orgs,
                    hot_prob=args.hot_prob,
                )
            config = GeneratorConfig(
                seed=args.seed,
                n_orgs=args.orgs,
                n_projects=args.projects,
                year_range=(args.year_start, args.year_end),
                new_firm_prob=args.new_firm_prob,
                shift=shift,
            )
            records = (
                gen_regime_shift_stream(config)
                if shift is not None
                else gen_pa_stream(config)
            )
            effective = {
                "generator": args.generator,
                "seed": args.seed,
                "orgs": args.orgs,
                "projects": args.projects,
                "years": [args.year_start, args.year_end],
                "new_firm_prob": args.new_firm_prob,
            }
            if shift is not None:
                effective["shift"] = {
                    "shift_year": shift.shift_year,
                    "hot_firms": shift.hot_firm_count,
                    "hot_orgs": shift.hot_org_count,
                    "hot_prob": shift.hot_prob,
                }
            body = records_to_csv(records)
    except (ValueError, ShiftOutsideRangeError) as exc:
        raise CliError(EXIT_BAD_CONFIG, f"invalid generator config: {exc}")
    try:
        Path(args.output).write_text(body)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {args.output}: {exc}")
    sys.stderr.write(json.dumps(effective, sort_keys=True) + "\n")
    _maybe_manifest(args, "generate", effective, [], str(args.output))
    return EXIT_OK


# -- argument parsing ---------------------------------------------------


def _add_input_args(p: argparse.ArgumentParser):
    p.add_argument("input", help="project record CSV or JSON Lines file")
    p.add_argument(
        "--format",
        choices=("auto", "csv", "jsonl"),
        default="auto",
        help="input format (default: by file extension, falling back to csv)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bipartite-lens",
        description="Two-mode collaboration network statistics: rank-size "
        "degree distributions, Robins-Alexander clustering, and windowed "
        "temporal scans.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summary", help="mode/edge counts for a record file")
    _add_input_args(p)
    p.add_argument("--text", action="store_true", help="aligned text instead of JSON")
    p.add_argument(
        "--error-threshold",
        type=float,
        default=0.1,
        help="max tolerated malformed-row fraction (default 0.1)",
    )
    p.add_argument("--manifest", action="store_true")
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("ranksize", help="rank-size degree distribution CSV")
    _add_input_args(p)
    p.add_argument("--mode", choices=("firm", "org"), required=True)
    p.add_argument("--fit", action="store_true", help="also fit a discrete power law")
    p.add_argument("--fit-output", help="fit JSON path (default: OUTPUT.fit.json)")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--manifest", action="store_true")
    p.set_defaults(func=cmd_ranksize)

    p = sub.add_parser("ra", help="Robins-Alexander census as JSON on stdout")
    _add_input_args(p)
    p.add_argument("--from", dest="from_year", type=int, help="window start year")
    p.add_argument("--to", dest="to_year", type=int, help="window end year")
    p.add_argument("--manifest", action="store_true")
    p.set_defaults(func=cmd_ra)

    p = sub.add_parser("scan", help="window matrix CSV over all (start, end) pairs")
    _add_input_args(p)
    p.add_argument("--exclude-year", type=int)
    p.add_argument(
        "--mask-only",
        action="store_true",
        help="mask cells containing --exclude-year instead of dropping its projects",
    )
    p.add_argument("--jobs", type=int, default=1, help="row-level parallelism")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--manifest", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("generate", help="write a synthetic corpus CSV")
    p.add_argument("generator", choices=("er", "pa", "shift"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--orgs", type=int, default=74)
    p.add_argument("--firms", type=int, default=300, help="er only")
    p.add_argument("--p", type=float, default=0.05, help="er edge probability")
    p.add_argument("--year", type=int, default=2000, help="er synthetic year")
    p.add_argument("--projects", type=int, default=50_000)
    p.add_argument("--year-start", type=int, default=1992)
    p.add_argument("--year-end", type=int, default=2018)
    p.add_argument("--new-firm-prob", type=float, default=0.4)
    p.add_argument("--shift-year", type=int, default=2008)
    p.add_argument("--hot-firms", type=int, default=8)
    p.add_argument("--hot-orgs", type=int, default=4)
    p.add_argument("--hot-prob", type=float, default=0.8)
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--manifest", action="store_true")
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
