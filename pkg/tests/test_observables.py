"""Tests for per-model observable evaluation."""

import math

import pytest
from pydantic import ValidationError

from monopole.core.driven import qubit_resonator_quasienergies, rwa_susceptibility
from monopole.core.two_level import Band
from monopole.errors import BadArgumentError
from monopole.models.params import QubitResonatorParams, RwaQubitParams
from monopole.services.observables import (
    EvaluationContext,
    evaluate,
    rwa_params as parse_rwa_params,
    spin_label,
)


class TestLabels:
    """Tests for column labels."""

    @pytest.mark.parametrize(
        ("m", "label"), [(0.5, "m+0.5"), (-1.0, "m-1"), (0.0, "m+0"), (1.5, "m+1.5")]
    )
    def test_spin_label(self, m: float, label: str) -> None:
        """Test signed magnetic-number labels."""
        assert spin_label(m) == label

    def test_rwa_params_from_detuning(self) -> None:
        """Test that ``delta`` fixes the drive frequency."""
        p = parse_rwa_params({"delta": 0.5, "lambda": 0.2})
        assert p.omega == pytest.approx(4.5)
        assert p.lam == 0.2


class TestTwoLevel:
    """Tests for the two-level evaluator."""

    def test_latitude_phases(self, fast_context: EvaluationContext) -> None:
        """Test Ω = 2π(1 − cosθ) and γ± = ∓Ω/2 in column order."""
        row = evaluate(
            "two-level",
            {"theta": math.pi / 3, "samples": 4000},
            ["solid_angle", "gamma_direct"],
            fast_context,
        )
        assert list(row) == ["solid_angle", "gamma_direct_plus", "gamma_direct_minus"]
        assert row["solid_angle"] == pytest.approx(math.pi, abs=1e-5)
        assert row["gamma_direct_plus"] == pytest.approx(-math.pi / 2, abs=1e-5)
        assert row["gamma_direct_minus"] == pytest.approx(math.pi / 2, abs=1e-5)

    def test_chern(self, fast_context: EvaluationContext) -> None:
        """Test that the bands carry Chern numbers −1 and +1."""
        row = evaluate("two-level", {"r": 2.0}, ["chern"], fast_context)
        assert row["chern_plus"] == pytest.approx(-1.0, abs=1e-9)
        assert row["chern_minus"] == pytest.approx(1.0, abs=1e-9)

    def test_pole_refused(self, fast_context: EvaluationContext) -> None:
        """Test that a contour shrunk onto the pole is refused."""
        with pytest.raises(BadArgumentError):
            evaluate("two-level", {"theta": 0.0}, ["solid_angle"], fast_context)


class TestDriven:
    """Tests for the driven-model evaluators."""

    def test_rwa_susceptibility(
        self, fast_context: EvaluationContext, rwa_params: RwaQubitParams
    ) -> None:
        """Test that χ± from the Floquet engine match the closed form."""
        values = {"delta": rwa_params.delta, "lambda": rwa_params.lam, "V0": rwa_params.V0}
        row = evaluate("rwa", values, ["quasienergy", "chi"], fast_context)
        assert list(row) == ["quasienergy_plus", "quasienergy_minus", "chi_plus", "chi_minus"]
        expected = rwa_susceptibility(rwa_params)
        assert row["chi_plus"] == pytest.approx(expected[Band.PLUS], abs=1e-6)
        assert row["chi_minus"] == pytest.approx(expected[Band.MINUS], abs=1e-6)

    def test_jaynes_quasienergies(self, fast_context: EvaluationContext) -> None:
        """Test that the resonator quasienergies use the photon-number closed form."""
        values = {"omega_r": 0.9, "lambda": 0.1, "n": 2}
        row = evaluate("jaynes", values, ["quasienergy"], fast_context)
        expected = qubit_resonator_quasienergies(QubitResonatorParams.model_validate(values))
        assert row["quasienergy_plus"] == pytest.approx(expected[Band.PLUS])
        assert row["quasienergy_minus"] == pytest.approx(expected[Band.MINUS])

    def test_unknown_parameter(self, fast_context: EvaluationContext) -> None:
        """Test that misspelled parameters are refused."""
        with pytest.raises(ValidationError):
            evaluate("jaynes", {"omega_x": 1.0}, ["quasienergy"], fast_context)

    def test_spin_j_chern(self, fast_context: EvaluationContext) -> None:
        """Test C_m = −2m with one column per magnetic number."""
        row = evaluate("spinj", {"j": 1.0}, ["chern"], fast_context)
        assert list(row) == ["chern_m+1", "chern_m+0", "chern_m-1"]
        assert row["chern_m+1"] == pytest.approx(-2.0, abs=1e-9)
        assert row["chern_m-1"] == pytest.approx(2.0, abs=1e-9)


class TestOtherModels:
    """Tests for the Λ-system, orbit and unknown models."""

    def test_dark_state_chern(self, fast_context: EvaluationContext) -> None:
        """Test that the dark state carries −l and |±⟩ carry l/2 for even l."""
        row = evaluate("lambda", {"l_p": 3, "l_c": 1}, ["chern"], fast_context)
        assert list(row) == ["chern_dark", "chern_plus", "chern_minus"]
        assert row["chern_dark"] == pytest.approx(-2.0, abs=1e-9)
        assert row["chern_plus"] == pytest.approx(1.0, abs=1e-9)

    def test_odd_winding_dark_only(self, fast_context: EvaluationContext) -> None:
        """Test that odd l reports the dark state alone."""
        row = evaluate("lambda", {"l_p": 1}, ["chern"], fast_context)
        assert list(row) == ["chern_dark"]

    def test_orbit_diagnostics(self, fast_context: EvaluationContext) -> None:
        """Test that a short orbit conserves J and retraces itself."""
        row = evaluate("orbit", {"t_max": 2.0, "mu": 0.7}, ["orbit"], fast_context)
        assert set(row) == {"j_drift", "radius_residual", "cone_residual", "reversal_residual"}
        assert row["j_drift"] < 1e-8
        assert row["reversal_residual"] < 1e-8

    def test_unknown_model(self, fast_context: EvaluationContext) -> None:
        """Test that unknown models are refused."""
        with pytest.raises(BadArgumentError):
            evaluate("ising", {}, ["chern"], fast_context)
