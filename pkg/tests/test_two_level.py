"""Tests for the two-level monopole."""

import math

import numpy as np
import pytest

from monopole.core.numerics import eigensolve_hermitian, phase_distance
from monopole.core.parameter_space import ParamPoint, latitude_contour
from monopole.core.two_level import (
    SPIN,
    Band,
    StringDirection,
    TwoLevelParams,
    aharonov_anandan_phase,
    analytic_eigvec,
    berry_connection_angular,
    berry_phase_contour,
    bloch_evolution,
    curvature_analytic,
    curvature_from_sum,
    hamiltonian,
    spin_gauge_factorized,
    spin_gauge_transform,
    string_line_integral,
    string_potential,
)
from monopole.errors import (
    BadArgumentError,
    NearDegenerateError,
    OnStringError,
    StringCrossingError,
)


class TestBand:
    """Tests for the Band enum."""

    def test_charges(self) -> None:
        """Test that the upper band sees q = −½ and the lower q = +½."""
        assert Band.PLUS.charge == -0.5
        assert Band.MINUS.charge == 0.5

    def test_index_matches_ascending_order(self) -> None:
        """Test that band indices follow the ascending eigenvalue list."""
        p = TwoLevelParams.at(0.3, -0.4, 0.5, lambda0=0.2)
        system = eigensolve_hermitian(hamiltonian(p))
        r = p.point.r
        assert system.values[Band.PLUS.index] == pytest.approx(0.1 + r / 2)
        assert system.values[Band.MINUS.index] == pytest.approx(0.1 - r / 2)


class TestEigenvectors:
    """Tests for the analytic eigenvectors."""

    @pytest.mark.parametrize("band", list(Band))
    def test_analytic_eigvec(self, band: Band) -> None:
        """Test that the analytic vector is an eigenvector with eigenvalue ±R/2."""
        point = ParamPoint.from_spherical(1.7, 1.2, 2.3)
        h = hamiltonian(TwoLevelParams(lambda0=0.0, point=point))
        v = analytic_eigvec(band, point.theta, point.phi)
        assert np.allclose(h @ v, band.sign * 0.85 * v)

    def test_connection_coefficient(self) -> None:
        """Test A_φ = q(1 − cosθ)."""
        assert berry_connection_angular(Band.PLUS, math.pi / 2) == pytest.approx(-0.5)


class TestBerryPhase:
    """Tests for contour holonomies."""

    @pytest.mark.parametrize("theta", [math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3])
    def test_holonomy_is_half_solid_angle(self, theta: float) -> None:
        """Test γ± = ∓½Ω around a latitude."""
        contour = latitude_contour(1.0, theta, 10_000)
        omega = 2 * math.pi * (1 - math.cos(theta))
        plus = berry_phase_contour(Band.PLUS, contour).raw
        minus = berry_phase_contour(Band.MINUS, contour).raw
        assert phase_distance(plus, -omega / 2) < 1e-6
        assert phase_distance(minus, omega / 2) < 1e-6

    def test_string_crossing(self) -> None:
        """Test that a contour at the south pole of the gauge is refused."""
        contour = latitude_contour(1.0, math.pi - 1e-7, 64)
        with pytest.raises(StringCrossingError):
            berry_phase_contour(Band.PLUS, contour)

    def test_aharonov_anandan(self) -> None:
        """Test that a spin precessing about z picks up half the cone solid angle."""
        theta = math.pi / 3
        phase = aharonov_anandan_phase(
            lambda _t: SPIN[2], analytic_eigvec(Band.PLUS, theta, 0.0), 2 * math.pi, steps=200
        )
        assert phase_distance(phase, -math.pi * (1 - math.cos(theta))) < 1e-6


class TestStrings:
    """Tests for Dirac and Schwinger string potentials."""

    def test_schwinger_is_dirac_average(self) -> None:
        """Test that the Schwinger potential averages strings along ±n."""
        n = StringDirection()
        p = ParamPoint(0.4, -0.3, 0.8)
        schwinger = string_potential(0.5, n, p, "schwinger")
        average = 0.5 * (string_potential(0.5, n, p) + string_potential(0.5, n.flipped(), p))
        assert np.allclose(schwinger, average, atol=1e-12)

    def test_on_string(self) -> None:
        """Test that points on the string are refused."""
        with pytest.raises(OnStringError):
            string_potential(0.5, StringDirection(), ParamPoint(0.0, 0.0, -1.0))

    def test_origin(self) -> None:
        """Test that the monopole itself is refused."""
        with pytest.raises(BadArgumentError):
            string_potential(0.5, StringDirection(), ParamPoint(0.0, 0.0, 0.0))

    def test_line_integral_matches_flux(self) -> None:
        """Test ∮A·dR = q·Ω for a latitude away from the string."""
        theta = math.pi / 3
        contour = latitude_contour(1.0, theta, 4_000)
        expected = 0.5 * 2 * math.pi * (1 - math.cos(theta))
        assert string_line_integral(0.5, contour) == pytest.approx(expected, rel=1e-5)

    def test_string_direction_must_be_unit(self) -> None:
        """Test that a non-unit direction is refused."""
        with pytest.raises(BadArgumentError):
            StringDirection(np.array([0.0, 0.0, 2.0]))


class TestCurvature:
    """Tests for Berry curvature."""

    def test_sum_over_states_matches_monopole(self) -> None:
        """Test that the sum over intermediate states reproduces qεR/r³."""
        point = ParamPoint(0.3, 0.7, -0.4)
        params = TwoLevelParams(lambda0=0.5, point=point)
        for band in Band:
            assert np.allclose(
                curvature_from_sum(params, band), curvature_analytic(band, point), atol=1e-10
            )

    def test_bands_cancel(self) -> None:
        """Test that the two band curvatures sum to zero."""
        params = TwoLevelParams.at(1.0, -0.2, 0.3)
        total = curvature_from_sum(params, Band.PLUS) + curvature_from_sum(params, Band.MINUS)
        assert np.allclose(total, 0.0)

    def test_degeneracy_refused(self) -> None:
        """Test that the diabolical point is refused."""
        with pytest.raises(NearDegenerateError):
            curvature_from_sum(TwoLevelParams.at(0.0, 0.0, 1e-8), Band.PLUS)


class TestSpinGauge:
    """Tests for the spin-form gauge transformation."""

    def test_diagonalizes_hamiltonian(self) -> None:
        """Test U†(λ₀/2 + R·S₃)U = H."""
        point = ParamPoint.from_spherical(1.3, 0.9, 2.0)
        u = spin_gauge_transform(point.theta, point.phi)
        diagonal = 0.5 * 0.4 * np.eye(2) + point.r * SPIN[2]
        h = hamiltonian(TwoLevelParams(lambda0=0.4, point=point))
        assert np.allclose(u.conj().T @ diagonal @ u, h, atol=1e-12)

    def test_factorized_form(self) -> None:
        """Test that the closed form equals the product of exponentials."""
        assert np.allclose(spin_gauge_transform(0.7, 1.9), spin_gauge_factorized(0.7, 1.9))


class TestBlochEvolution:
    """Tests for Bloch precession."""

    def test_precession_preserves_length(self) -> None:
        """Test that |S| and S·R stay constant during precession."""
        trajectory = bloch_evolution([0.3, 0.0, 0.4], [0.0, 0.0, 1.0], 2 * math.pi, 1e-3)
        lengths = np.linalg.norm(trajectory.spins, axis=1)
        assert np.allclose(lengths, 0.5, atol=1e-9)
        assert np.allclose(trajectory.spins[:, 2], 0.4, atol=1e-12)
        assert np.allclose(trajectory.spins[-1], [0.3, 0.0, 0.4], atol=1e-8)

    def test_rejects_bad_step(self) -> None:
        """Test that a nonpositive step is refused."""
        with pytest.raises(BadArgumentError):
            bloch_evolution([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 1.0, 0.0)
