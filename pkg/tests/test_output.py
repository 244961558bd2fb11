"""Tests for CSV and JSON result writers."""

import json
from pathlib import Path

import pytest

from monopole.errors import BadArgumentError
from monopole.services.output import SCHEMA, ResultTable, render, to_csv, to_json, write_table


@pytest.fixture
def table() -> ResultTable:
    """Two-row table with a missing cell."""
    table = ResultTable(columns=["theta", "gamma", "status"])
    table.append({"theta": 0.5, "gamma": -0.25, "status": "ok"})
    table.append({"theta": 1.0, "status": "BadArgumentError"})
    return table


class TestResultTable:
    """Tests for ResultTable."""

    def test_unknown_column(self, table: ResultTable) -> None:
        """Test that rows may not introduce new columns."""
        with pytest.raises(BadArgumentError):
            table.append({"phi": 1.0})

    def test_column(self, table: ResultTable) -> None:
        """Test that missing cells read as None."""
        assert table.column("gamma") == [-0.25, None]


class TestCsv:
    """Tests for to_csv."""

    def test_header_order(self, table: ResultTable) -> None:
        """Test that the header follows the table's column order."""
        lines = to_csv(table).splitlines()
        assert lines[0] == "theta,gamma,status"
        assert lines[1] == "0.5,-0.25,ok"
        assert lines[2] == "1.0,,BadArgumentError"

    def test_full_precision(self) -> None:
        """Test that floats are written with round-trip precision."""
        t = ResultTable(columns=["x"])
        t.append({"x": 0.1 + 0.2})
        assert to_csv(t).splitlines()[1] == "0.30000000000000004"


class TestJson:
    """Tests for to_json."""

    def test_document(self, table: ResultTable) -> None:
        """Test schema, command, metadata and rows."""
        text = to_json(table, "sweep", {"model": "two-level"})
        data = json.loads(text)
        assert data["schema"] == SCHEMA
        assert data["command"] == "sweep"
        assert data["metadata"] == {"model": "two-level"}
        assert data["columns"] == ["theta", "gamma", "status"]
        assert data["rows"][1]["gamma"] is None

    def test_sorted_keys(self, table: ResultTable) -> None:
        """Test that top-level keys are sorted."""
        data = json.loads(to_json(table, "sweep"))
        assert list(data) == sorted(data)

    def test_render_unknown_format(self, table: ResultTable) -> None:
        """Test that only csv and json are rendered."""
        with pytest.raises(BadArgumentError):
            render(table, "xml", "sweep")  # type: ignore[arg-type]


class TestWriteTable:
    """Tests for write_table."""

    def test_creates_parents(self, table: ResultTable, temp_dir: Path) -> None:
        """Test that missing parent directories are created."""
        path = write_table(table, temp_dir / "out" / "sweep.csv", "csv", "sweep")
        assert path.exists()
        assert path.read_text().startswith("theta,gamma,status")
