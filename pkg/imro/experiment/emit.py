"""Result serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence

    from imro.experiment.runner import BenchReport
    from imro.models import ResultRecord


class OutputFormat(str, Enum):
    """Result file format."""

    JSON = "json"
    CSV = "csv"


CSV_HEADER = ["method", "model", "n", "M", "K", "allocation", "users", "expected_clicks", "time_ms"]
BENCH_HEADER = ["n", "method", "time_ms"]


def encode_list(values: Sequence[int]) -> str:
    """``[a|b|c]``, a single CSV cell."""
    return "[" + "|".join(str(v) for v in values) + "]"


def decode_list(cell: str) -> list[int]:
    """Inverse of :func:`encode_list`."""
    inner = cell.strip().removeprefix("[").removesuffix("]")
    return [int(part) for part in inner.split("|")] if inner else []


def _csv_row(record: ResultRecord) -> list[str]:
    return [
        record.method.value,
        record.model.value,
        str(record.node_count),
        str(record.impressions),
        str(record.stages),
        encode_list(record.allocation),
        encode_list(record.users),
        repr(record.expected_clicks),
        repr(record.time_ms),
    ]


def _write_csv(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def emit_records(records: Sequence[ResultRecord], fmt: OutputFormat = OutputFormat.JSON) -> str:
    """Serialize records as a JSON array or as CSV rows under one header."""
    if fmt == OutputFormat.CSV:
        return _write_csv(CSV_HEADER, [_csv_row(r) for r in records])
    return json.dumps([r.model_dump(mode="json") for r in records], indent=2) + "\n"


def emit(record: ResultRecord, fmt: OutputFormat = OutputFormat.JSON) -> str:
    """Serialize one record as a JSON object or a one-row CSV table."""
    if fmt == OutputFormat.CSV:
        return emit_records([record], OutputFormat.CSV)
    return json.dumps(record.model_dump(mode="json"), indent=2) + "\n"


def emit_bench(report: BenchReport) -> str:
    """``n,method,time_ms`` rows in run order."""
    return _write_csv(
        BENCH_HEADER, [[str(r.n), r.method.value, repr(r.time_ms)] for r in report.rows]
    )


def format_slopes(report: BenchReport) -> str:
    """One ``method: slope`` line per method."""
    lines = []
    for method, slope in report.slopes.items():
        text = "n/a" if math.isnan(slope) else f"{slope:.3f}"
        lines.append(f"{method.value}: log-log slope {text}")
    return "\n".join(lines)
