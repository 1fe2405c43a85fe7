"""Tests for the imro command line."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import Result
from typer.testing import CliRunner

from imro.cli import app
from imro.graph import generate_synthetic, read_edge_list

runner = CliRunner()

QUIET = ["--log-level", "ERROR"]


def invoke(*args: str) -> Result:
    """Run the CLI with logging silenced."""
    return runner.invoke(app, [*args, *QUIET])


def test_run_json() -> None:
    """Test a solve prints one JSON record."""
    result = invoke("run", "--synthetic", "10,0.6,7", "-M", "2", "-K", "2")
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["method"] == "sdp"
    assert data["node_count"] == 10
    assert sum(data["allocation"]) == 2
    assert data["expected_clicks"] > 0.5


def test_run_is_byte_identical_without_timing(tmp_path: Path) -> None:
    """Test seeded runs reproduce the same file."""
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        result = invoke(
            "run", "--synthetic", "40,0.2,5", "-M", "4", "-K", "2",
            "--method", "mpso", "--iterations", "5", "--seed", "9",
            "--no-timing", "--out", str(out),
        )  # fmt: skip
        assert result.exit_code == 0, result.output
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text())["time_ms"] == 0.0


def test_run_csv(tmp_path: Path) -> None:
    """Test the CSV format."""
    out = tmp_path / "result.csv"
    result = invoke(
        "run", "--synthetic", "30,0.3,1", "-M", "3", "-K", "2", "--method", "ldh",
        "--format", "csv", "--out", str(out),
    )  # fmt: skip
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == "method,model,n,M,K,allocation,users,expected_clicks,time_ms"
    assert lines[1].startswith("ldh,gim,30,3,2,[1|2],")


def test_budget_exceeded_exit_code() -> None:
    """Test an exact solve above the cap exits with 3."""
    result = invoke(
        "run", "--synthetic", "10,0.6,7", "-M", "2", "-K", "2", "--expansion-cap", "1"
    )
    assert result.exit_code == 3
    assert "cap" in result.output


def test_missing_file_exit_code(tmp_path: Path) -> None:
    """Test an unreadable graph exits with 4."""
    result = invoke("run", "--graph", str(tmp_path / "nope.csv"), "-M", "1", "-K", "1")
    assert result.exit_code == 4
    assert "Error" in result.output


def test_malformed_file_exit_code(tmp_path: Path) -> None:
    """Test a bad edge-list line is reported with its number."""
    path = tmp_path / "bad.csv"
    path.write_text("0,1\n1;2\n", encoding="utf-8")
    result = invoke("run", "--graph", str(path), "-M", "1", "-K", "1")
    assert result.exit_code == 4
    assert "line 2" in result.output.lower()


@pytest.mark.parametrize(
    "args",
    [
        ["--synthetic", "10,0.5", "-M", "2", "-K", "2"],
        ["--synthetic", "10,0.5,1", "-M", "2", "-K", "2", "--p0", "1.5"],
        ["--synthetic", "10,0.5,1", "-M", "2", "-K", "4", "--method", "ldh"],
        ["--synthetic", "10,0.5,1", "-M", "0", "-K", "1"],
        ["-M", "2", "-K", "2"],
    ],
)
def test_invalid_parameters_exit_code(args: list[str]) -> None:
    """Test invalid parameters exit with 2."""
    result = invoke("run", *args)
    assert result.exit_code == 2


def test_both_graph_sources_rejected(tmp_path: Path) -> None:
    """Test --graph and --synthetic together exit with 2."""
    path = tmp_path / "edges.csv"
    path.write_text("0,1\n", encoding="utf-8")
    result = invoke("run", "--graph", str(path), "--synthetic", "5,0.5,1", "-M", "1", "-K", "1")
    assert result.exit_code == 2


def test_bad_log_level() -> None:
    """Test an unknown log level exits with 2."""
    result = runner.invoke(
        app, ["run", "--synthetic", "5,0.5,1", "-M", "1", "-K", "1", "--log-level", "LOUD"]
    )
    assert result.exit_code == 2


def test_generate_stdout() -> None:
    """Test the edge list matches the generator."""
    result = invoke("generate", "-n", "30", "-p", "0.2", "--seed", "4")
    assert result.exit_code == 0, result.output
    graph = generate_synthetic(30, 0.2, 4)
    expected = "".join(f"{u},{v}\n" for u, v in graph.edges())
    assert result.stdout == expected


def test_generate_file(tmp_path: Path) -> None:
    """Test a written graph loads back unchanged."""
    out = tmp_path / "g.csv"
    result = invoke("generate", "-n", "50", "-p", "0.1", "--seed", "42", "--out", str(out))
    assert result.exit_code == 0, result.output
    graph = generate_synthetic(50, 0.1, 42)
    loaded, _ = read_edge_list(out)
    assert sorted(loaded.edges()) == sorted(graph.edges())
    assert f"Wrote {graph.edge_count} edges" in result.stdout


def test_compare_csv(tmp_path: Path) -> None:
    """Test one CSV row per method under one header."""
    out = tmp_path / "compare.csv"
    result = invoke(
        "compare", "--synthetic", "8,0.5,3", "-M", "2", "-K", "2",
        "--methods", "sdp,ldh,ahc,mpso", "--iterations", "4",
        "--format", "csv", "--out", str(out),
    )  # fmt: skip
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert len(lines) == 5
    assert [line.split(",")[0] for line in lines[1:]] == ["sdp", "ldh", "ahc", "mpso"]


def test_compare_unknown_method() -> None:
    """Test an unknown solver name exits with 2."""
    result = invoke("compare", "--synthetic", "8,0.5,3", "-M", "2", "-K", "2", "--methods", "foo")
    assert result.exit_code == 2


def test_sweep() -> None:
    """Test one record per alpha."""
    result = invoke(
        "sweep", "--synthetic", "50,0.2,1", "-M", "4", "-K", "2",
        "--method", "ldh", "--values", "0,0.5,1",
    )  # fmt: skip
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert [item["alpha"] for item in data] == [0.0, 0.5, 1.0]


def test_sweep_iterations() -> None:
    """Test an iteration sweep echoes each count."""
    result = invoke(
        "sweep", "--synthetic", "50,0.2,1", "-M", "4", "-K", "2",
        "--method", "ahc", "--param", "iterations", "--values", "2,4",
    )  # fmt: skip
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert [item["iterations"] for item in data] == [2, 4]
    assert {item["alpha"] for item in data} == {0.25}


@pytest.mark.parametrize("values", [None, "2.5"])
def test_sweep_needs_whole_values(values: str | None) -> None:
    """Test a count sweep without values, or with fractions, exits with 2."""
    args = ["sweep", "--synthetic", "20,0.2,1", "-M", "2", "-K", "2", "--param", "swarm_size"]
    if values is not None:
        args += ["--values", values]
    result = invoke(*args, "--method", "mpso")
    assert result.exit_code == 2


def test_bench(tmp_path: Path) -> None:
    """Test bench rows are written with their header."""
    out = tmp_path / "bench.csv"
    result = invoke(
        "bench", "--sizes", "40,80", "--methods", "ldh", "--avg-degree", "3",
        "-M", "3", "-K", "2", "--out", str(out),
    )  # fmt: skip
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == "n,method,time_ms"
    assert [line.split(",")[:2] for line in lines[1:]] == [["40", "ldh"], ["80", "ldh"]]
    assert "ldh: log-log slope" in result.output


def test_bench_is_byte_identical_without_timing(tmp_path: Path) -> None:
    """Test bench files only reproduce once timing is off."""
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        result = invoke(
            "bench", "--sizes", "40,80", "--methods", "ldh", "--avg-degree", "3",
            "-M", "3", "-K", "2", "--no-timing", "--out", str(out),
        )  # fmt: skip
        assert result.exit_code == 0, result.output
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text().splitlines()[1] == "40,ldh,0.0"
    assert "ldh: log-log slope n/a" in result.output
