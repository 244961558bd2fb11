"""Tests for monopole settings module."""

from pathlib import Path

import pytest
import yaml
from pydantic import ValidationError

from monopole.config.settings import (
    MonopoleSettings,
    generate_default_config,
    load_settings,
)
from monopole.errors import BadArgumentError


class TestMonopoleSettings:
    """Tests for MonopoleSettings class."""

    def test_default_values(self) -> None:
        """Test default settings values."""
        settings = MonopoleSettings()
        assert settings.tol_scale == 1.0
        assert settings.verbose is False
        assert settings.floquet.cutoff == 4
        assert settings.floquet.samples == 512
        assert settings.chern.n_theta == 100
        assert settings.output.format == "csv"

    def test_effective_tolerances(self) -> None:
        """Test that tol_scale multiplies every threshold."""
        settings = MonopoleSettings(tol_scale=0.01)
        scaled = settings.effective_tolerances()
        assert scaled.holonomy == pytest.approx(1e-8)
        assert scaled.chern_integer == pytest.approx(1e-11)

    def test_rejects_nonpositive_scale(self) -> None:
        """Test that tol_scale must be positive."""
        with pytest.raises(ValidationError):
            MonopoleSettings(tol_scale=0.0)

    def test_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that MONOPOLE_* variables configure nested sections."""
        monkeypatch.setenv("MONOPOLE_FLOQUET__CUTOFF", "7")
        monkeypatch.setenv("MONOPOLE_TOL_SCALE", "3")
        settings = MonopoleSettings()
        assert settings.floquet.cutoff == 7
        assert settings.tol_scale == 3.0


class TestLoadSettings:
    """Tests for load_settings function."""

    def test_load_from_yaml_file(self, temp_config_file: Path) -> None:
        """Test loading settings from YAML file."""
        settings = load_settings(temp_config_file)
        assert settings.tol_scale == 2.0
        assert settings.floquet.cutoff == 6
        assert settings.chern.n_phi == 80
        assert settings.output.format == "json"

    def test_file_beats_flags(self, temp_config_file: Path) -> None:
        """Test that values in the file take precedence over CLI overrides."""
        settings = load_settings(temp_config_file, floquet={"cutoff": 9}, tol_scale=5.0)
        assert settings.floquet.cutoff == 6
        assert settings.tol_scale == 2.0

    def test_flags_fill_gaps(self, temp_config_file: Path) -> None:
        """Test that overrides apply to keys the file leaves unset."""
        settings = load_settings(temp_config_file, floquet={"samples": 1024})
        assert settings.floquet.samples == 1024
        assert settings.floquet.cutoff == 6

    def test_flags_beat_environment(self, temp_dir: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that explicit overrides take precedence over the environment."""
        monkeypatch.chdir(temp_dir)
        monkeypatch.setenv("MONOPOLE_TOL_SCALE", "3")
        assert load_settings(tol_scale=0.5).tol_scale == 0.5
        assert load_settings().tol_scale == 3.0

    def test_none_overrides_ignored(self, temp_dir: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that unset flags do not mask defaults."""
        monkeypatch.chdir(temp_dir)
        settings = load_settings(output={"format": None, "workers": None}, tol_scale=None)
        assert settings.output.format == "csv"
        assert settings.output.workers == 1

    def test_missing_explicit_file(self, temp_dir: Path) -> None:
        """Test that a named config file must exist."""
        with pytest.raises(BadArgumentError):
            load_settings(temp_dir / "nonexistent.yaml")

    def test_discovers_default_file(self, temp_dir: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that monopole.yaml in the working directory is picked up."""
        (temp_dir / "monopole.yaml").write_text("floquet:\n  cutoff: 5\n")
        monkeypatch.chdir(temp_dir)
        settings = load_settings()
        assert settings.floquet.cutoff == 5
        assert settings.config_path is not None
        assert settings.config_path.resolve() == (temp_dir / "monopole.yaml").resolve()

    def test_invalid_yaml(self, temp_dir: Path) -> None:
        """Test that unparsable files are reported."""
        path = temp_dir / "bad.yaml"
        path.write_text("floquet: [unclosed\n")
        with pytest.raises(BadArgumentError):
            load_settings(path)

    def test_out_of_range_value(self, temp_dir: Path) -> None:
        """Test that invalid values fail validation."""
        path = temp_dir / "bad.yaml"
        path.write_text("floquet:\n  samples: 10\n")
        with pytest.raises(ValidationError):
            load_settings(path)


class TestGenerateDefaultConfig:
    """Tests for generate_default_config function."""

    def test_generates_valid_yaml(self) -> None:
        """Test that generated config is valid YAML that loads back."""
        data = yaml.safe_load(generate_default_config())
        settings = MonopoleSettings(**data)
        assert settings.floquet.cutoff == 4
        assert settings.tolerances.holonomy == pytest.approx(1e-6)

    def test_lists_every_tolerance(self) -> None:
        """Test that every threshold appears in the template."""
        data = yaml.safe_load(generate_default_config())
        assert set(data["tolerances"]) == set(MonopoleSettings().tolerances.model_dump())
