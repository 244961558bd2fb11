"""Tests for sweep specification loading and evaluation."""

from pathlib import Path

import pytest

from monopole.config.settings import MonopoleSettings
from monopole.errors import BadArgumentError, NonFiniteError
from monopole.models.config import SweepSpec
from monopole.services.output import ResultTable
from monopole.services.sweep_service import (
    EXIT_INPUT,
    EXIT_NUMERICAL,
    EXIT_OK,
    PointOutcome,
    SpecFileError,
    SweepResult,
    SweepService,
    key_lines,
    load_sweep_spec,
)


class TestLoadSweepSpec:
    """Tests for load_sweep_spec."""

    def test_valid_file(self, sweep_file: Path) -> None:
        """Test loading the fixture sweep."""
        spec = load_sweep_spec(sweep_file)
        assert spec.model == "two-level"
        assert [p["theta"] for p in spec.grid()] == [0.5, 1.5, 2.5]
        assert spec.fixed == {"r": 1.0, "samples": 2000}

    def test_missing_file(self, temp_dir: Path) -> None:
        """Test that a missing file is reported."""
        with pytest.raises(SpecFileError, match="not found"):
            load_sweep_spec(temp_dir / "missing.yaml")

    def test_not_a_mapping(self, temp_dir: Path) -> None:
        """Test that a list document is refused."""
        path = temp_dir / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(SpecFileError):
            load_sweep_spec(path)

    def test_diagnostics_carry_lines(self, temp_dir: Path) -> None:
        """Test that field errors point at the offending line."""
        path = temp_dir / "bad.yaml"
        path.write_text("model: rwa\nparameter: delta\nrange: [0.0, 1.0, 1]\noutputs: [chi]\n")
        with pytest.raises(SpecFileError) as excinfo:
            load_sweep_spec(path)
        assert any(d.startswith("line 3: range") for d in excinfo.value.diagnostics)

    def test_is_input_error(self, temp_dir: Path) -> None:
        """Test that spec file errors are input errors."""
        with pytest.raises(ValueError):
            load_sweep_spec(temp_dir / "missing.yaml")

    def test_key_lines(self) -> None:
        """Test 1-based line numbers of top-level keys."""
        assert key_lines("a: 1\n\nb:\n  c: 2\n") == {"a": 1, "b": 3}
        assert key_lines("[unclosed") == {}


class TestSweepService:
    """Tests for SweepService."""

    def test_table_layout(self, sweep_file: Path, fast_settings: MonopoleSettings) -> None:
        """Test columns, row order and status."""
        result = SweepService(fast_settings).run(load_sweep_spec(sweep_file))
        table = result.table
        assert table.columns == [
            "theta",
            "solid_angle",
            "gamma_direct_plus",
            "gamma_direct_minus",
            "status",
        ]
        assert table.column("theta") == [0.5, 1.5, 2.5]
        assert table.column("status") == ["ok", "ok", "ok"]
        assert result.exit_code == EXIT_OK

    def test_workers_keep_order(self, sweep_file: Path, fast_settings: MonopoleSettings) -> None:
        """Test that concurrent evaluation keeps grid order and values."""
        spec = load_sweep_spec(sweep_file)
        serial = SweepService(fast_settings, workers=1).run(spec).table
        parallel = SweepService(fast_settings, workers=4).run(spec).table
        assert parallel.rows == serial.rows

    def test_failed_point(self, fast_settings: MonopoleSettings) -> None:
        """Test that a failing point is reported in its row and the exit code."""
        spec = SweepSpec(
            model="two-level",
            parameter="theta",
            range=(0.0, 1.0, 2),
            outputs=["solid_angle"],
            fixed={"samples": 500},
        )
        result = SweepService(fast_settings).run(spec)
        assert result.table.column("status") == ["BadArgumentError", "ok"]
        assert result.table.column("solid_angle")[0] is None
        assert len(result.failures) == 1
        assert result.exit_code == EXIT_INPUT


class TestSweepResult:
    """Tests for SweepResult exit codes."""

    def test_numerical_wins(self) -> None:
        """Test that numerical failures take precedence over input failures."""
        spec = SweepSpec(model="rwa", parameter="delta", range=(0, 1, 2), outputs=["chi"])
        result = SweepResult(
            spec=spec,
            table=ResultTable(columns=[]),
            outcomes=[
                PointOutcome(point={}, error=BadArgumentError("bad")),
                PointOutcome(point={}, error=NonFiniteError("nan")),
            ],
        )
        assert result.exit_code == EXIT_NUMERICAL
        assert result.outcomes[1].status == "NonFiniteError"
