"""Tests for parameter-space points, contours and solid angles."""

import math

import numpy as np
import pytest

from monopole.core.parameter_space import (
    Contour,
    ParamPoint,
    latitude_contour,
    modulated_contour,
    random_rotation,
    solid_angle,
    winding_number,
)
from monopole.errors import BadArgumentError


class TestParamPoint:
    """Tests for ParamPoint."""

    def test_spherical_round_trip(self) -> None:
        """Test that spherical coordinates come back from the Cartesian point."""
        point = ParamPoint.from_spherical(2.0, 1.1, 4.0)
        assert point.r == pytest.approx(2.0)
        assert point.theta == pytest.approx(1.1)
        assert point.phi == pytest.approx(4.0)

    def test_origin_has_zero_theta(self) -> None:
        """Test the polar angle convention at the origin."""
        assert ParamPoint(0.0, 0.0, 0.0).theta == 0.0


class TestContour:
    """Tests for Contour validation and transforms."""

    def test_latitude_is_closed(self) -> None:
        """Test that the last sample repeats the first."""
        contour = latitude_contour(1.5, 1.0, 64)
        assert contour.samples == 64
        assert np.array_equal(contour.points[0], contour.points[-1])
        assert contour.radius == pytest.approx(1.5)

    @pytest.mark.parametrize("theta", [0.0, math.pi, -0.1])
    def test_latitude_rejects_poles(self, theta: float) -> None:
        """Test that latitudes on or beyond the poles are refused."""
        with pytest.raises(BadArgumentError):
            latitude_contour(1.0, theta, 64)

    def test_latitude_rejects_few_samples(self) -> None:
        """Test that fewer than 16 samples are refused."""
        with pytest.raises(BadArgumentError):
            latitude_contour(1.0, 1.0, 8)

    def test_rejects_open_contour(self) -> None:
        """Test that an unclosed point list is refused."""
        points = latitude_contour(1.0, 1.0, 32).points.copy()
        points[-1] = points[1]
        with pytest.raises(BadArgumentError):
            Contour(points)

    def test_rejects_large_steps(self) -> None:
        """Test that adjacent samples more than π/8 apart are refused."""
        points = latitude_contour(1.0, math.pi / 2, 32).points.copy()
        points[5] = points[8]
        with pytest.raises(BadArgumentError):
            Contour(points)

    def test_json_round_trip(self) -> None:
        """Test that a contour survives JSON serialization."""
        contour = latitude_contour(1.0, 0.7, 32)
        restored = Contour.from_json(contour.to_json())
        assert np.allclose(restored.points, contour.points)


class TestSolidAngle:
    """Tests for the oriented solid angle."""

    @pytest.mark.parametrize("theta", [math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3])
    def test_latitude_cap(self, theta: float) -> None:
        """Test the cap area 2π(1 − cosθ) of a counterclockwise latitude."""
        contour = latitude_contour(1.0, theta, 10_000)
        assert solid_angle(contour) == pytest.approx(2 * math.pi * (1 - math.cos(theta)), abs=1e-6)

    def test_reversal_flips_sign(self) -> None:
        """Test that reversing the contour negates the solid angle modulo 4π."""
        contour = modulated_contour(1.0, math.pi / 3, 0.2, 3, 400)
        total = solid_angle(contour) + solid_angle(contour.reversed())
        assert math.remainder(total, 4 * math.pi) == pytest.approx(0.0, abs=1e-10)

    def test_rotation_invariance(self, rng: np.random.Generator) -> None:
        """Test that rotating the contour leaves the solid angle unchanged modulo 4π."""
        contour = modulated_contour(1.0, math.pi / 3, 0.2, 3, 400)
        original = solid_angle(contour)
        rotated = solid_angle(contour.rotated(random_rotation(rng)))
        assert math.remainder(rotated - original, 4 * math.pi) == pytest.approx(0.0, abs=1e-10)

    def test_winding_number(self) -> None:
        """Test that a latitude winds once about z."""
        assert winding_number(latitude_contour(1.0, 1.0, 64)) == pytest.approx(1.0)
        assert winding_number(latitude_contour(1.0, 1.0, 64).reversed()) == pytest.approx(-1.0)

    def test_random_rotation_is_proper(self, rng: np.random.Generator) -> None:
        """Test that the Haar rotation is orthogonal with unit determinant."""
        q = random_rotation(rng)
        assert np.allclose(q.T @ q, np.eye(3))
        assert np.linalg.det(q) == pytest.approx(1.0)
