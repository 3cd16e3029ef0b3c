"""Project record parsing and store construction.

Canonical CSV layout: header ``project_id,firm_id,org_id,start_year``,
UTF-8, LF line endings on output (CRLF tolerated on input).  JSON Lines
carries one object per line with the same four keys; unknown keys are
ignored but counted.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable, Union

from .errors import UnreadableInputError
from .graph_core import BipartiteGraph, from_pairs

__all__ = [
    "ProjectRecord",
    "RecordError",
    "RecordErrorKind",
    "InputFormat",
    "TimedEdgeStore",
    "parse_records",
    "build_static_graph",
    "build_timed_store",
    "records_to_csv",
]

CSV_HEADER = ("project_id", "firm_id", "org_id", "start_year")
DEFAULT_YEAR_RANGE = (1900, 2100)


class InputFormat(Enum):
    CSV = "csv"
    JSONL = "jsonl"


@dataclass(frozen=True)
class ProjectRecord:
    """One cooperation project: a firm, a research org, and a start year."""

    project_id: str
    firm_id: str
    org_id: str
    start_year: int


class RecordErrorKind(Enum):
    EMPTY_FIELD = "empty_field"
    BAD_YEAR = "bad_year"
    YEAR_OUT_OF_RANGE = "year_out_of_range"
    WRONG_FIELD_COUNT = "wrong_field_count"
    DUPLICATE_ID = "duplicate_id"
    BAD_JSON = "bad_json"
    MISSING_KEY = "missing_key"


@dataclass(frozen=True)
class RecordError:
    """A malformed or rejected row, with its 1-based line number."""

    line: int
    kind: RecordErrorKind
    detail: str = ""


@dataclass
class ParseResult:
    records: list[ProjectRecord]
    errors: list[RecordError]
    unknown_key_rows: int = 0


def _validate_row(
    line: int,
    project_id: str,
    firm_id: str,
    org_id: str,
    year_text,
    seen_ids: set[str],
    year_range: tuple[int, int],
) -> Union[ProjectRecord, RecordError]:
    project_id = project_id.strip()
    firm_id = firm_id.strip()
    org_id = org_id.strip()
    if not (project_id and firm_id and org_id):
        return RecordError(line, RecordErrorKind.EMPTY_FIELD)
    try:
        year = int(str(year_text).strip())
    except (TypeError, ValueError):
        return RecordError(line, RecordErrorKind.BAD_YEAR, str(year_text))
    if not year_range[0] <= year <= year_range[1]:
        return RecordError(line, RecordErrorKind.YEAR_OUT_OF_RANGE, str(year))
    if project_id in seen_ids:
        return RecordError(line, RecordErrorKind.DUPLICATE_ID, project_id)
    seen_ids.add(project_id)
    return ProjectRecord(project_id, firm_id, org_id, year)


def parse_records(
    stream: Union[IO[bytes], IO[str], bytes, str],
    fmt: InputFormat = InputFormat.CSV,
    year_range: tuple[int, int] = DEFAULT_YEAR_RANGE,
) -> ParseResult:
    """Parse a byte or text stream into records plus per-row errors.

    Well-formed rows become :class:`ProjectRecord`; malformed rows become
    :class:`RecordError` values carrying line number and reason, order
    preserved.  Duplicate ``project_id`` keeps the first occurrence and
    flags later ones.  Raises :class:`UnreadableInputError` only on
    stream-level failure (e.g. undecodable bytes).
    """
    try:
        if isinstance(stream, bytes):
            text = stream.decode("utf-8")
        elif isinstance(stream, str):
            text = stream
        else:
            data = stream.read()
            text = data.decode("utf-8") if isinstance(data, bytes) else data
    except (OSError, UnicodeDecodeError) as exc:
        raise UnreadableInputError(str(exc)) from exc

    records: list[ProjectRecord] = []
    errors: list[RecordError] = []
    seen: set[str] = set()
    unknown_key_rows = 0

    if fmt is InputFormat.CSV:
        reader = csv.reader(io.StringIO(text))
        for line_no, row in enumerate(reader, start=1):
            if line_no == 1 and [c.strip().lower() for c in row] == list(CSV_HEADER):
                continue
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 4:
                errors.append(
                    RecordError(line_no, RecordErrorKind.WRONG_FIELD_COUNT, str(len(row)))
                )
                continue
            out = _validate_row(line_no, row[0], row[1], row[2], row[3], seen, year_range)
            (records if isinstance(out, ProjectRecord) else errors).append(out)
    else:
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                errors.append(RecordError(line_no, RecordErrorKind.BAD_JSON, str(exc)))
                continue
            if not isinstance(obj, dict):
                errors.append(RecordError(line_no, RecordErrorKind.BAD_JSON, "not an object"))
                continue
            missing = [k for k in CSV_HEADER if k not in obj]
            if missing:
                errors.append(
                    RecordError(line_no, RecordErrorKind.MISSING_KEY, ",".join(missing))
                )
                continue
            if set(obj) - set(CSV_HEADER):
                unknown_key_rows += 1
            out = _validate_row(
                line_no,
                str(obj["project_id"]),
                str(obj["firm_id"]),
                str(obj["org_id"]),
                obj["start_year"],
                seen,
                year_range,
            )
            (records if isinstance(out, ProjectRecord) else errors).append(out)

    return ParseResult(records, errors, unknown_key_rows)


def records_to_csv(records: Iterable[ProjectRecord]) -> str:
    """Serialize records back to the canonical CSV (LF endings)."""
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for r in records:
        buf.write(f"{r.project_id},{r.firm_id},{r.org_id},{r.start_year}\n")
    return buf.getvalue()


def build_static_graph(records: Iterable[ProjectRecord]) -> BipartiteGraph:
    """Ever-cooperated graph: edge iff the pair shares >= 1 project."""
    return from_pairs((r.firm_id, r.org_id) for r in records)


@dataclass
class TimedEdgeStore:
    """Per (firm, org) pair, the sorted multiset of project start years.

    ``year_index`` maps each year to the pairs with at least one project
    starting that year; ``year_range`` brackets all stored years and is
    ``None`` for an empty store.
    """

    pair_years: dict[tuple[str, str], list[int]] = field(default_factory=dict)
    year_index: dict[int, list[tuple[str, str]]] = field(default_factory=dict)
    year_range: Union[tuple[int, int], None] = None
    n_projects: int = 0

    def is_empty(self) -> bool:
        return self.year_range is None

    def firm_ids(self) -> list[str]:
        return sorted({f for f, _ in self.pair_years})

    def org_ids(self) -> list[str]:
        return sorted({o for _, o in self.pair_years})

    def without_year(self, year: int) -> "TimedEdgeStore":
        """Copy of the store with all projects starting in ``year`` dropped."""
        pair_years: dict[tuple[str, str], list[int]] = {}
        for pair, years in self.pair_years.items():
            kept = [y for y in years if y != year]
            if kept:
                pair_years[pair] = kept
        return _assemble(pair_years)


def _assemble(pair_years: dict[tuple[str, str], list[int]]) -> TimedEdgeStore:
    year_index: dict[int, list[tuple[str, str]]] = {}
    n = 0
    for pair in sorted(pair_years):
        years = sorted(pair_years[pair])
        pair_years[pair] = years
        n += len(years)
        for y in sorted(set(years)):
            year_index.setdefault(y, []).append(pair)
    if year_index:
        rng = (min(year_index), max(year_index))
    else:
        rng = None
    return TimedEdgeStore(dict(sorted(pair_years.items())), year_index, rng, n)


def build_timed_store(records: Iterable[ProjectRecord]) -> TimedEdgeStore:
    """Collect every record's start year per pair, with multiplicity."""
    pair_years: dict[tuple[str, str], list[int]] = {}
    for r in records:
        pair_years.setdefault((r.firm_id, r.org_id), []).append(r.start_year)
    return _assemble(pair_years)
