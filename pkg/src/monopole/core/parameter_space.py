"""Parameter-space geometry: points, closed contours on spheres, solid angles."""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from pydantic import TypeAdapter

from monopole.core.numerics import TWO_PI, unwrap_phase
from monopole.errors import BadArgumentError, DegenerateContourError

MIN_CONTOUR_SAMPLES = 16
MAX_ANGULAR_STEP = math.pi / 8
RADIUS_TOL = 1e-10

_POINTS_ADAPTER = TypeAdapter(list[tuple[float, float, float]])


@dataclass(frozen=True)
class ParamPoint:
    """Point R = (X, Y, Z) of the monopole parameter space."""

    x: float
    y: float
    z: float

    @classmethod
    def from_spherical(cls, r: float, theta: float, phi: float) -> "ParamPoint":
        sin_theta = math.sin(theta)
        return cls(
            x=r * sin_theta * math.cos(phi),
            y=r * sin_theta * math.sin(phi),
            z=r * math.cos(theta),
        )

    @classmethod
    def from_array(cls, values: np.ndarray) -> "ParamPoint":
        return cls(float(values[0]), float(values[1]), float(values[2]))

    @cached_property
    def r(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    @cached_property
    def theta(self) -> float:
        """Polar angle in [0, π]; 0 at the origin."""
        if self.r == 0.0:
            return 0.0
        return math.acos(max(-1.0, min(1.0, self.z / self.r)))

    @cached_property
    def phi(self) -> float:
        """Azimuth in [0, 2π)."""
        angle = math.atan2(self.y, self.x) % TWO_PI
        return 0.0 if angle >= TWO_PI else angle

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True, eq=False)
class Contour:
    """Closed, ordered sample list on a sphere centred at the origin.

    ``points`` has shape (samples + 1, 3) and its last row equals its first.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 3:
            raise BadArgumentError(f"Contour points must have shape (n, 3), got {points.shape}")
        if len(points) - 1 < MIN_CONTOUR_SAMPLES:
            raise BadArgumentError(
                f"Contour needs at least {MIN_CONTOUR_SAMPLES} samples, got {len(points) - 1}"
            )
        if not np.array_equal(points[0], points[-1]):
            raise BadArgumentError("Contour is not closed: last point differs from first")

        radii = np.linalg.norm(points, axis=1)
        if radii[0] <= 0:
            raise BadArgumentError("Contour sphere radius must be positive")
        if np.max(np.abs(radii - radii[0])) > RADIUS_TOL * max(1.0, radii[0]):
            raise BadArgumentError("Contour points do not share a common radius")

        unit = points / radii[:, None]
        cosines = np.clip(np.einsum("ij,ij->i", unit[:-1], unit[1:]), -1.0, 1.0)
        if np.max(np.arccos(cosines)) >= MAX_ANGULAR_STEP:
            raise BadArgumentError("Adjacent contour points are more than π/8 apart")
        object.__setattr__(self, "points", points)

    @property
    def samples(self) -> int:
        return len(self.points) - 1

    @property
    def radius(self) -> float:
        return float(np.linalg.norm(self.points[0]))

    @property
    def param_points(self) -> list[ParamPoint]:
        return [ParamPoint.from_array(p) for p in self.points]

    def unit_vectors(self) -> np.ndarray:
        return self.points / np.linalg.norm(self.points, axis=1)[:, None]

    def reversed(self) -> "Contour":
        return Contour(self.points[::-1].copy())

    def rotated(self, rotation: np.ndarray) -> "Contour":
        rotated = self.points @ np.asarray(rotation, dtype=float).T
        rotated[-1] = rotated[0]
        return Contour(rotated)

    def to_json(self) -> str:
        return _POINTS_ADAPTER.dump_json([tuple(p) for p in self.points]).decode()

    @classmethod
    def from_json(cls, payload: str | bytes) -> "Contour":
        return cls(np.array(_POINTS_ADAPTER.validate_json(payload), dtype=float))


def latitude_contour(r: float, theta: float, samples: int) -> Contour:
    """Counterclockwise (viewed from +z) circle of constant polar angle.

    Raises:
        BadArgumentError: For r ≤ 0, θ outside (0, π) or fewer than 16 samples.
    """
    if r <= 0:
        raise BadArgumentError(f"Radius must be positive, got {r}")
    if not 0.0 < theta < math.pi:
        raise BadArgumentError(f"Latitude must lie strictly between the poles, got θ={theta}")
    if samples < MIN_CONTOUR_SAMPLES:
        raise BadArgumentError(f"Need at least {MIN_CONTOUR_SAMPLES} samples, got {samples}")

    phi = TWO_PI * np.arange(samples + 1) / samples
    points = np.column_stack(
        (
            r * math.sin(theta) * np.cos(phi),
            r * math.sin(theta) * np.sin(phi),
            np.full(samples + 1, r * math.cos(theta)),
        )
    )
    points[-1] = points[0]
    return Contour(points)


def modulated_contour(
    r: float, theta: float, amplitude: float, harmonic: int, samples: int
) -> Contour:
    """Closed contour θ(φ) = θ + amplitude·sin(harmonic·φ) winding once around z."""
    if not (0.0 < theta - abs(amplitude) and theta + abs(amplitude) < math.pi):
        raise BadArgumentError("Modulated contour must stay away from the poles")
    if samples < MIN_CONTOUR_SAMPLES:
        raise BadArgumentError(f"Need at least {MIN_CONTOUR_SAMPLES} samples, got {samples}")
    phi = TWO_PI * np.arange(samples + 1) / samples
    polar = theta + amplitude * np.sin(harmonic * phi)
    points = r * np.column_stack(
        (np.sin(polar) * np.cos(phi), np.sin(polar) * np.sin(phi), np.cos(polar))
    )
    points[-1] = points[0]
    return Contour(points)


def solid_angle(c: Contour) -> float:
    """Oriented solid angle enclosed by a contour.

    Sum of signed spherical-triangle excesses of (north pole, Pₖ, Pₖ₊₁). The
    result is the area to the left of the path, counterclockwise seen from +z
    being positive; when that area contains the south pole the value is shifted
    by −4π. Multiple windings accumulate.

    Raises:
        DegenerateContourError: If consecutive points coincide.
    """
    unit = c.unit_vectors()
    a, b = unit[:-1], unit[1:]
    if np.min(np.linalg.norm(b - a, axis=1)) <= 1e-14:
        raise DegenerateContourError("Consecutive contour points coincide")

    north = np.array([0.0, 0.0, 1.0])
    numerator = np.cross(a, b) @ north
    denominator = 1.0 + a @ north + b @ north + np.einsum("ij,ij->i", a, b)
    return float(np.sum(2.0 * np.arctan2(numerator, denominator)))


def winding_number(c: Contour) -> float:
    """Net number of turns of the contour's azimuth about the z axis."""
    unit = c.unit_vectors()
    azimuth = unwrap_phase(np.arctan2(unit[:, 1], unit[:, 0]))
    return float((azimuth[-1] - azimuth[0]) / TWO_PI)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-random proper rotation matrix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
