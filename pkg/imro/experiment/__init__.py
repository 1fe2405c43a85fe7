"""Experiment runner and result emitters."""

from imro.experiment.emit import (
    CSV_HEADER,
    OutputFormat,
    decode_list,
    emit,
    emit_bench,
    emit_records,
    encode_list,
)
from imro.experiment.runner import (
    BenchReport,
    BenchRow,
    bench,
    compare,
    load_graph,
    loglog_slope,
    run,
    run_on_graph,
    solve,
    sweep,
    sweep_alpha,
)

__all__ = [
    "CSV_HEADER",
    "OutputFormat",
    "BenchReport",
    "BenchRow",
    "bench",
    "compare",
    "decode_list",
    "emit",
    "emit_bench",
    "emit_records",
    "encode_list",
    "load_graph",
    "loglog_slope",
    "run",
    "run_on_graph",
    "solve",
    "sweep",
    "sweep_alpha",
]
