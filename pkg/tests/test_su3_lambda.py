"""Tests for the Λ-system states and SU(3) monopole charges."""

import math
from fractions import Fraction

import numpy as np
import pytest

from monopole.core.su3_lambda import (
    TRIPLET,
    ChargeMatrix,
    cartan_charge,
    center_element,
    charge_matrix_basic,
    charge_matrix_oam,
    chart_angles,
    dark_bright_states,
    gauge_transformed_potential,
    induced_connection,
    is_quantized,
    lambda_charge,
    lambda_hamiltonian,
    linear_path,
    nonabelian_potential,
    oam_connection_coefficients,
    spin_hypercharge_decomposition,
    su3_gauge_transform,
    triplet_charge_fluxes,
)
from monopole.errors import (
    BadArgumentError,
    ChartSingularError,
    NotInCartanSpanError,
    ZeroFieldError,
)
from monopole.models.params import LambdaParams, OamBeams


class TestDarkBrightStates:
    """Tests for the dark, bright and |±⟩ states."""

    def test_eigenstates(self) -> None:
        """Test H|D⟩ = 0 and H|±⟩ = ±(R/2)|±⟩ at two-photon resonance."""
        p = LambdaParams.from_angles(1.3, 1.1, 0.4, -0.9)
        h = lambda_hamiltonian(p)
        states = dark_bright_states(p)
        assert np.allclose(h @ states.dark, 0.0, atol=1e-12)
        assert np.allclose(h @ states.plus, 0.65 * states.plus, atol=1e-12)
        assert np.allclose(h @ states.minus, -0.65 * states.minus, atol=1e-12)

    def test_orthonormal(self) -> None:
        """Test that the triplet is an orthonormal basis."""
        states = dark_bright_states(LambdaParams(omega_p=0.3 + 0.4j, omega_c=1.0))
        basis = np.column_stack([states.state(name) for name in TRIPLET])
        assert np.allclose(basis.conj().T @ basis, np.eye(3))

    def test_zero_field(self) -> None:
        """Test that Ω_p = Ω_c = 0 is refused."""
        with pytest.raises(ZeroFieldError):
            dark_bright_states(LambdaParams(omega_p=0, omega_c=0))

    def test_detuned(self) -> None:
        """Test that the closed forms need δ = 0."""
        with pytest.raises(BadArgumentError):
            dark_bright_states(LambdaParams(delta=0.1))

    def test_chart(self) -> None:
        """Test tan(θ/2) = |Ω_p|/|Ω_c|, φ = φ_p − φ_c and ψ = φ_p + φ_c."""
        p = LambdaParams.from_angles(2.0, 1.0, 0.7, 0.2)
        assert p.theta == pytest.approx(1.0)
        assert p.phi == pytest.approx(0.5)
        assert p.psi == pytest.approx(0.9)
        assert chart_angles(1.0, 0.5, 0.9) == pytest.approx((1.0, 0.7, 0.2))


class TestInducedConnection:
    """Tests for the induced connections along chart paths."""

    def test_matches_closed_form(self) -> None:
        """Test A₀ = −(cos²(θ/2)φ̇_c + sin²(θ/2)φ̇_p) and A± = −A₀/2."""
        path = linear_path((0.6, -0.5, 0.3), (2.2, 1.0, -1.2))
        samples = induced_connection(path, np.linspace(0.0, 1.0, 11))
        assert samples.max_deviation() < 1e-8

    def test_triplet_sums_to_zero(self) -> None:
        """Test that the three connections sum to zero."""
        path = linear_path((0.9, 0.0, 0.0), (1.4, 1.2, 0.3))
        samples = induced_connection(path, np.linspace(0.0, 1.0, 5))
        total = sum(samples.numerical[name] for name in TRIPLET)
        assert np.allclose(total, 0.0, atol=1e-8)

    def test_chart_pole(self) -> None:
        """Test that paths through θ = 0 are refused."""
        path = linear_path((0.0, 0.0, 0.0), (1.0, 1.0, 1.0))
        with pytest.raises(ChartSingularError):
            induced_connection(path, [0.0, 0.5])

    def test_oam_coefficients(self) -> None:
        """Test that OAM beams give A₀ = −(l_c cos²(θ/2) + l_p sin²(θ/2))."""
        theta = math.pi / 3
        coefficients = oam_connection_coefficients(OamBeams(l_p=2, l_c=1), theta)
        expected = -(math.cos(theta / 2) ** 2 + 2 * math.sin(theta / 2) ** 2)
        assert coefficients["dark"] == pytest.approx(expected)
        assert coefficients["plus"] == pytest.approx(-expected / 2)


class TestChargeMatrix:
    """Tests for charge matrices and their quantization."""

    def test_traceless(self) -> None:
        """Test that a charge with nonzero trace is refused."""
        with pytest.raises(BadArgumentError):
            ChargeMatrix.of(1, 1, 1)

    def test_basic_charge(self) -> None:
        """Test Q₀ = ½·diag(−1, ½, ½)."""
        assert charge_matrix_basic().as_strings() == ["-1/2", "1/4", "1/4"]

    def test_center_element(self) -> None:
        """Test exp(i4πQ₀) = diag(1, −1, −1)."""
        assert np.allclose(center_element(charge_matrix_basic()), np.diag([1, -1, -1]))

    @pytest.mark.parametrize("l", [1, 2, 3, 4])
    def test_oam_charge(self, l: int) -> None:  # noqa: E741
        """Test Q_l = lambda_charge(−2l, −l) and SU(3) quantization for even l."""
        q = charge_matrix_oam(OamBeams(l_p=l, l_c=0))
        assert q == lambda_charge(-2 * l, -l)
        assert is_quantized(q, "SU") == (l % 2 == 0)

    def test_basic_charge_not_quantized(self) -> None:
        """Test that Q₀ is quantized for neither SU(3) nor SU(3)/ℤ₃."""
        assert not is_quantized(charge_matrix_basic(), "SU")
        assert not is_quantized(charge_matrix_basic(), "SU/Z")

    def test_cartan_quantized(self) -> None:
        """Test that integer Cartan labels give SU(3)-quantized charges."""
        assert is_quantized(cartan_charge(3, -2), "SU")

    def test_decomposition_round_trip(self) -> None:
        """Test that the spin and hypercharge parts rebuild the charge."""
        q = cartan_charge(-2, -1)
        decomposition = spin_hypercharge_decomposition(q)
        assert decomposition.spin == Fraction(-3, 2)
        assert decomposition.charge() == q

    def test_decomposition_from_matrix(self) -> None:
        """Test that an array charge is read back exactly."""
        decomposition = spin_hypercharge_decomposition(np.diag([0.5, -0.25, -0.25]))
        assert decomposition.charge() == ChargeMatrix.of("1/2", "-1/4", "-1/4")

    def test_off_diagonal_refused(self) -> None:
        """Test that charges outside the Cartan subalgebra are refused."""
        matrix = np.diag([0.5, -0.5, 0.0]).astype(complex)
        matrix[0, 1] = 0.1
        with pytest.raises(NotInCartanSpanError):
            spin_hypercharge_decomposition(matrix)

    def test_fluxes(self) -> None:
        """Test the sphere flux 4πQᵢᵢ per component."""
        fluxes = triplet_charge_fluxes(charge_matrix_basic())
        assert np.allclose(fluxes, [-2 * math.pi, math.pi, math.pi])


class TestGauges:
    """Tests for string gauges and the SU(3) embedding."""

    @pytest.mark.parametrize("phi", [0.0, 1.0, 4.0])
    def test_string_gauge(self, phi: float) -> None:
        """Test that g(φ) carries the south-string potential to the north-string one."""
        q = charge_matrix_oam(OamBeams(l_p=2))
        transformed = gauge_transformed_potential(q, math.pi / 3, phi)
        assert np.allclose(transformed, nonabelian_potential(q, math.pi / 3, "north"), atol=1e-8)

    def test_embedding_is_unitary(self) -> None:
        """Test that the embedded two-level gauge is unitary and fixes |e⟩."""
        u = su3_gauge_transform(0.8, 1.7)
        assert np.allclose(u.conj().T @ u, np.eye(3))
        assert u[2, 2] == 1

    def test_unknown_string(self) -> None:
        """Test that only south and north strings exist."""
        with pytest.raises(BadArgumentError):
            nonabelian_potential(charge_matrix_basic(), 1.0, "east")  # type: ignore[arg-type]
