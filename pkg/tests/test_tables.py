"""Tests for the single-model result tables."""

import math
from pathlib import Path

import pytest

from monopole.config.settings import MonopoleSettings
from monopole.core.numerics import phase_distance
from monopole.errors import BadArgumentError, InputError
from monopole.models.params import OamBeams, OrbitParams
from monopole.services.observables import EvaluationContext
from monopole.services.tables import (
    chern_table,
    floquet_spectrum_table,
    lambda_table,
    load_floquet_model,
    orbit_trajectory_table,
    point_table,
    two_level_table,
)


class TestPointTable:
    """Tests for point_table."""

    def test_columns(self, fast_context: EvaluationContext) -> None:
        """Test parameters first, then observables; complex cells as text."""
        table = point_table(
            "rwa",
            [{"delta": 0.1, "V0": 0.5 + 0.5j}, {"delta": -0.1, "V0": 0.5 + 0.5j}],
            ["quasienergy"],
            fast_context,
        )
        assert table.columns == ["delta", "V0", "quasienergy_plus", "quasienergy_minus"]
        assert table.column("V0") == ["(0.5+0.5j)", "(0.5+0.5j)"]
        assert len(table.rows) == 2


class TestFloquetSpectrumTable:
    """Tests for floquet_spectrum_table."""

    def test_model_file(self, floquet_model_file: Path, fast_settings: MonopoleSettings) -> None:
        """Test that both phases agree for every state of the file model."""
        model = load_floquet_model(floquet_model_file)
        table = floquet_spectrum_table(model, fast_settings)
        assert len(table.rows) == model.dimension
        for row in table.rows:
            assert -model.omega / 2 <= row["quasienergy"] < model.omega / 2
            assert phase_distance(row["gamma_direct"], row["gamma_hf"]) < 1e-5

    def test_missing_file(self, temp_dir: Path) -> None:
        """Test that a missing model file is an input error."""
        with pytest.raises(InputError):
            load_floquet_model(temp_dir / "missing.yaml")


class TestTwoLevelTable:
    """Tests for two_level_table."""

    def test_columns(self, fast_context: EvaluationContext) -> None:
        """Test the theta, gamma_plus, gamma_minus, omega_solid layout."""
        table = two_level_table(
            [math.pi / 3, math.pi / 2], 1.0, 4000, ["gamma_direct", "solid_angle"], fast_context
        )
        assert table.columns == ["theta", "gamma_plus", "gamma_minus", "omega_solid"]
        first = table.rows[0]
        assert first["gamma_plus"] == pytest.approx(-math.pi / 2, abs=1e-5)
        assert first["gamma_minus"] == pytest.approx(math.pi / 2, abs=1e-5)
        assert first["omega_solid"] == pytest.approx(math.pi, abs=1e-5)

    def test_requested_subset(self, fast_context: EvaluationContext) -> None:
        """Test that unrequested observables leave no columns behind."""
        table = two_level_table([1.0], 1.0, 500, ["solid_angle"], fast_context)
        assert table.columns == ["theta", "omega_solid"]


class TestChernTable:
    """Tests for chern_table."""

    def test_spin_half(self, fast_settings: MonopoleSettings) -> None:
        """Test one row per magnetic number with C = −2m."""
        table = chern_table("spinj", fast_settings, j=0.5)
        assert table.column("band") == ["m+0.5", "m-0.5"]
        assert table.column("chern") == pytest.approx([-1.0, 1.0], abs=1e-9)

    @pytest.mark.parametrize(("band", "expected"), [("minus", 1.0), ("0", -1.0)])
    def test_single_band(self, fast_settings: MonopoleSettings, band: str, expected: float) -> None:
        """Test that a band is chosen by label or by position."""
        table = chern_table("two-level", fast_settings, band=band)
        assert len(table.rows) == 1
        assert table.rows[0]["chern"] == pytest.approx(expected, abs=1e-9)
        assert table.rows[0]["flux"] == pytest.approx(2 * math.pi * expected, abs=1e-8)

    def test_spin_two_band(self, fast_settings: MonopoleSettings) -> None:
        """Test the m = −2 band of spin 2."""
        table = chern_table("spinj", fast_settings, band="m-2", j=2.0)
        assert table.rows[0]["chern"] == pytest.approx(4.0, abs=1e-9)

    @pytest.mark.parametrize("band", ["bright", "5", "-1"])
    def test_unknown_band(self, fast_settings: MonopoleSettings, band: str) -> None:
        """Test that a band the model lacks is refused."""
        with pytest.raises(BadArgumentError):
            chern_table("two-level", fast_settings, band=band)

    def test_unknown_model(self, fast_settings: MonopoleSettings) -> None:
        """Test that unknown models are refused."""
        with pytest.raises(BadArgumentError):
            chern_table("ising", fast_settings)  # type: ignore[arg-type]

    def test_odd_winding_dark_only(self, fast_settings: MonopoleSettings) -> None:
        """Test that odd l reports the dark state alone."""
        table = chern_table("lambda", fast_settings, beams=OamBeams(l_p=1))
        assert table.column("band") == ["dark"]


class TestLambdaTable:
    """Tests for lambda_table."""

    def test_theta_grid(self, fast_settings: MonopoleSettings) -> None:
        """Test one row per θ with cap fluxes 2π·Q(1 − cosθ)."""
        thetas = [math.pi / 2, math.pi]
        table, _ = lambda_table(OamBeams(l_p=2), thetas, fast_settings)
        assert table.column("theta") == thetas
        assert table.columns[1:4] == ["flux_dark", "flux_plus", "flux_minus"]
        assert table.column("flux_dark") == pytest.approx([-2 * math.pi, -4 * math.pi])
        assert table.column("flux_plus") == pytest.approx([math.pi, 2 * math.pi])

    def test_even_winding(self, fast_settings: MonopoleSettings) -> None:
        """Test charges, sphere fluxes, Chern numbers and verdicts for l = 2."""
        _, metadata = lambda_table(OamBeams(l_p=2), [math.pi / 3], fast_settings)
        assert metadata["charge"] == {"dark": "-1", "plus": "1/2", "minus": "1/2"}
        sphere = metadata["sphere_flux"]
        assert sphere["dark"]["numerical"] == pytest.approx(-4 * math.pi, abs=1e-8)
        assert sphere["plus"]["analytic"] == pytest.approx(2 * math.pi)
        assert sphere["dark"]["chern"] == pytest.approx(-2.0, abs=1e-9)
        assert sphere["minus"]["chern"] == pytest.approx(1.0, abs=1e-9)
        assert metadata["verdicts"] == {
            "traceless": True,
            "flux_matches_charge": True,
            "chern_integer": True,
            "chern_matches_charge": True,
            "quantized_su3": True,
            "quantized_su3_z3": True,
        }

    def test_odd_winding(self, fast_settings: MonopoleSettings) -> None:
        """Test that |±⟩ have no Chern entry and SU(3) quantization fails for l = 1."""
        _, metadata = lambda_table(OamBeams(l_p=1), [math.pi / 3], fast_settings)
        assert metadata["sphere_flux"]["plus"]["chern"] is None
        assert metadata["sphere_flux"]["dark"]["chern"] == pytest.approx(-1.0, abs=1e-9)
        assert metadata["verdicts"]["quantized_su3"] is False
        assert metadata["verdicts"]["flux_matches_charge"] is True


class TestOrbitTrajectoryTable:
    """Tests for orbit_trajectory_table."""

    def test_trajectory(self) -> None:
        """Test the sampled orbit spans [−t_max, t_max] and conserves J."""
        table = orbit_trajectory_table(OrbitParams(t_max=1.0), every=100)
        times = table.column("t")
        assert times[0] == pytest.approx(-1.0)
        assert times[-1] == pytest.approx(1.0)
        assert times == sorted(times)
        assert max(table.column("j_residual")) < 1e-8
        assert min(table.column("r")) == pytest.approx(1.0, abs=1e-6)

    def test_analytic_radius_column(self) -> None:
        """Test that every sampled radius follows the closed-form orbit."""
        table = orbit_trajectory_table(OrbitParams(t_max=2.0, mu=0.7), every=50)
        assert table.columns[-2:] == ["j_residual", "r_analytic_residual"]
        residuals = table.column("r_analytic_residual")
        assert residuals[0] == pytest.approx(0.0, abs=1e-10)
        assert max(abs(r) for r in residuals) < 1e-6
