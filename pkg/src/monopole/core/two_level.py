"""The diabolical-point monopole of a generic two-level Hamiltonian.

H = ½(λ₀·1 + R·σ) has eigenvalues λ₀/2 ± R/2, which meet at R = 0. The
eigenstates carry Berry connections of a monopole of charge q± = ∓½ sitting at
the degeneracy. This module holds the analytic eigen-structure, several
independent evaluations of the connection and curvature, the Dirac and
Schwinger string potentials, the spin-form gauge transformation and Bloch
precession.
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

import numpy as np

from monopole.core.numerics import (
    TWO_PI,
    EigenSystem,
    eigensolve_hermitian,
    link_phases,
    matrix_exp,
    wrap_phase,
)
from monopole.core.parameter_space import Contour, ParamPoint
from monopole.errors import (
    BadArgumentError,
    NearDegenerateError,
    OnStringError,
    StringCrossingError,
)

logger = logging.getLogger(__name__)

DP_EXCLUSION_RADIUS = 1e-6
STRING_EXCLUSION = 1e-6
MIN_GAP = 1e-8
ON_STRING_TOL = 1e-10

SIGMA = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
SPIN = SIGMA / 2
IDENTITY2 = np.eye(2, dtype=complex)

StringScheme = Literal["dirac", "schwinger"]


class Band(Enum):
    """Eigenstate branch |u±⟩ of the two-level Hamiltonian."""

    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self) -> int:
        return 1 if self is Band.PLUS else -1

    @property
    def charge(self) -> float:
        """Monopole charge q± = ∓½ seen by this band."""
        return -0.5 * self.sign

    @property
    def index(self) -> int:
        """Position of the band in an ascending eigenvalue list."""
        return 1 if self is Band.PLUS else 0


@dataclass(frozen=True)
class TwoLevelParams:
    """Trace offset λ₀ and field point R."""

    lambda0: float
    point: ParamPoint

    @classmethod
    def at(cls, x: float, y: float, z: float, lambda0: float = 0.0) -> "TwoLevelParams":
        return cls(lambda0=lambda0, point=ParamPoint(x, y, z))


@dataclass(frozen=True, eq=False)
class StringDirection:
    """Unit vector along which a Dirac string leaves the monopole."""

    n: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, -1.0]))

    def __post_init__(self) -> None:
        n = np.asarray(self.n, dtype=float)
        if n.shape != (3,) or abs(float(np.linalg.norm(n)) - 1.0) > 1e-12:
            raise BadArgumentError(f"String direction must be a unit 3-vector, got {self.n}")
        object.__setattr__(self, "n", n)

    @classmethod
    def normalized(cls, vector: Sequence[float]) -> "StringDirection":
        v = np.asarray(vector, dtype=float)
        return cls(v / np.linalg.norm(v))

    def flipped(self) -> "StringDirection":
        return StringDirection(-self.n)


@dataclass(frozen=True)
class BerryPhaseResult:
    """Holonomy along a contour: unreduced line integral and its value in (−2π, 2π)."""

    raw: float
    phase: float


@dataclass(frozen=True, eq=False)
class BlochTrajectory:
    times: np.ndarray
    spins: np.ndarray


def hamiltonian(p: TwoLevelParams) -> np.ndarray:
    """Return ½[[λ₀+Z, X−iY], [X+iY, λ₀−Z]]."""
    point = p.point
    return 0.5 * np.array(
        [
            [p.lambda0 + point.z, point.x - 1j * point.y],
            [point.x + 1j * point.y, p.lambda0 - point.z],
        ],
        dtype=complex,
    )


def analytic_eigvec(band: Band, theta: float, phi: float) -> np.ndarray:
    """Eigenvector in the gauge singular at the south pole."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if band is Band.PLUS:
        return np.array([c, np.exp(1j * phi) * s], dtype=complex)
    return np.array([-np.exp(-1j * phi) * s, c], dtype=complex)


def berry_connection_angular(band: Band, theta: float) -> float:
    """Coefficient A_φ = q±(1 − cosθ) of dφ."""
    return band.charge * (1.0 - math.cos(theta))


def berry_phase_contour(band: Band, c: Contour) -> BerryPhaseResult:
    """Berry phase from discrete overlap products of the analytic eigenvectors.

    γ = −Σ arg⟨u(Rₖ)|u(Rₖ₊₁)⟩ over the closed contour.

    Raises:
        StringCrossingError: If a sample lies within 1e-6 rad of θ = π.
    """
    points = c.param_points
    thetas = np.array([p.theta for p in points])
    if np.any(math.pi - thetas < STRING_EXCLUSION):
        raise StringCrossingError("Contour touches the south-pole string of the eigenvector gauge")

    states = np.array([analytic_eigvec(band, p.theta, p.phi) for p in points])
    raw = -float(np.sum(link_phases(states)))
    return BerryPhaseResult(raw=raw, phase=math.fmod(raw, TWO_PI))


def string_potential(
    q: float,
    n: StringDirection,
    p: ParamPoint,
    scheme: StringScheme = "dirac",
) -> np.ndarray:
    """Monopole vector potential with a singular string along n (Dirac) or ±n (Schwinger).

    Raises:
        BadArgumentError: At the origin or for an unknown scheme.
        OnStringError: When the point sits on a string ray.
    """
    r = p.r
    if r <= 0:
        raise BadArgumentError("Vector potential is undefined at the monopole")
    position = p.as_array()
    along = float(n.n @ position)
    cross = np.cross(position, n.n)

    if scheme == "dirac":
        gap = r - along
        if gap < ON_STRING_TOL * r:
            raise OnStringError(f"Point {position} lies on the Dirac string")
        return q * cross / (r * gap)
    if scheme == "schwinger":
        gap = r * r - along * along
        if gap < ON_STRING_TOL * r * r:
            raise OnStringError(f"Point {position} lies on a Schwinger string")
        return q * along * cross / (r * gap)
    raise BadArgumentError(f"Unknown string scheme {scheme!r}")


def string_line_integral(
    q: float,
    c: Contour,
    n: StringDirection | None = None,
    scheme: StringScheme = "dirac",
) -> float:
    """∮A·dR of a string potential around the contour (trapezoid rule)."""
    direction = n or StringDirection()
    potentials = np.array([string_potential(q, direction, p, scheme) for p in c.param_points])
    steps = np.diff(c.points, axis=0)
    averaged = 0.5 * (potentials[:-1] + potentials[1:])
    return float(np.sum(np.einsum("ij,ij->i", averaged, steps)))


def curvature_sum(
    derivatives: Sequence[np.ndarray],
    system: EigenSystem,
    index: int,
    *,
    min_gap: float = MIN_GAP,
) -> np.ndarray:
    """Curvature of eigenstate ``index`` from the sum over intermediate states.

    F_ab = i Σ_{m≠n} [⟨n|∂aH|m⟩⟨m|∂bH|n⟩ − (a↔b)] / (Eₘ − Eₙ)²

    Args:
        derivatives: ∂H/∂xᵃ for each parameter direction.
        system: Eigen-decomposition of H at the point.
        index: Eigenstate n.
        min_gap: Smallest tolerated |Eₘ − Eₙ|.

    Returns:
        Real antisymmetric matrix of shape (k, k) for k derivative directions.

    Raises:
        NearDegenerateError: If another level is within ``min_gap``.
    """
    gaps = np.delete(system.values - system.values[index], index)
    if len(gaps) and np.min(np.abs(gaps)) < min_gap:
        raise NearDegenerateError(f"Level {index} is within {min_gap} of another level")

    vectors = system.vectors
    # Matrix elements ⟨m|∂aH|n⟩ for every m, per direction.
    elements = np.array([vectors.conj().T @ d @ vectors[:, index] for d in derivatives])
    weights = np.zeros(system.size)
    others = np.arange(system.size) != index
    weights[others] = 1.0 / (system.values[others] - system.values[index]) ** 2

    # X_ab = Σ_m ⟨n|∂aH|m⟩⟨m|∂bH|n⟩ w_m
    x = np.einsum("am,bm,m->ab", elements.conj(), elements, weights)
    return np.real(1j * (x - x.T))


def curvature_from_sum(p: TwoLevelParams, band: Band) -> np.ndarray:
    """Berry curvature F_ij of a two-level band via ``curvature_sum``.

    Raises:
        NearDegenerateError: Within 1e-6 of the degeneracy or when the gap is below 1e-8.
    """
    if p.point.r <= DP_EXCLUSION_RADIUS:
        raise NearDegenerateError(f"Point r={p.point.r:.3e} is inside the DP exclusion radius")
    system = eigensolve_hermitian(hamiltonian(p))
    return curvature_sum(list(SPIN), system, band.index)


def curvature_analytic(band: Band, p: ParamPoint) -> np.ndarray:
    """Monopole curvature F_ij = q± εᵢⱼₖ Rᵏ / r³."""
    b = band.charge * p.as_array() / p.r**3
    return np.array(
        [
            [0.0, b[2], -b[1]],
            [-b[2], 0.0, b[0]],
            [b[1], -b[0], 0.0],
        ]
    )


def spin_gauge_transform(theta: float, phi: float) -> np.ndarray:
    """U(θ, φ) = exp(iθS₂)·exp(iφS₃).

    Satisfies U†·(λ₀/2·1 + R·S₃)·U = H(λ₀, R), so it rotates the field axis R̂
    back onto z.
    """
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    half = np.exp(0.5j * phi)
    return np.array(
        [
            [c * half, s * half.conjugate()],
            [-s * half, c * half.conjugate()],
        ],
        dtype=complex,
    )


def spin_gauge_factorized(theta: float, phi: float) -> np.ndarray:
    """The same transformation built from matrix exponentials."""
    return matrix_exp(1j * theta * SPIN[1]) @ matrix_exp(1j * phi * SPIN[2])


def spin_form_potential(p: ParamPoint) -> np.ndarray:
    """Non-Abelian potential Aᵢ = εᵢⱼₖ Rⱼ Sₖ / R², shape (3, 2, 2)."""
    if p.r <= DP_EXCLUSION_RADIUS:
        raise NearDegenerateError("Spin-form potential is singular at the degeneracy")
    position = p.as_array()
    potential = np.zeros((3, 2, 2), dtype=complex)
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        potential[i] = position[j] * SPIN[k] - position[k] * SPIN[j]
    return potential / p.r**2


def spin_form_field(p: ParamPoint) -> np.ndarray:
    """Field B = −(S·R̂) R / R³, shape (3, 2, 2)."""
    if p.r <= DP_EXCLUSION_RADIUS:
        raise NearDegenerateError("Spin-form field is singular at the degeneracy")
    position = p.as_array()
    projection = np.einsum("i,ijk->jk", position / p.r, SPIN)
    return -np.einsum("i,jk->ijk", position, projection) / p.r**3


def spin_form_field_strength(p: ParamPoint, h: float = 1e-5) -> np.ndarray:
    """Fᵢⱼ = ∂ᵢAⱼ − ∂ⱼAᵢ − i[Aᵢ, Aⱼ] by central differences, shape (3, 3, 2, 2)."""
    position = p.as_array()
    derivative = np.zeros((3, 3, 2, 2), dtype=complex)
    for i in range(3):
        step = np.zeros(3)
        step[i] = h
        upper = spin_form_potential(ParamPoint.from_array(position + step))
        lower = spin_form_potential(ParamPoint.from_array(position - step))
        derivative[i] = (upper - lower) / (2 * h)

    potential = spin_form_potential(p)
    strength = np.zeros((3, 3, 2, 2), dtype=complex)
    for i in range(3):
        for j in range(3):
            commutator = potential[i] @ potential[j] - potential[j] @ potential[i]
            strength[i, j] = derivative[i, j] - derivative[j, i] - 1j * commutator
    return strength


def bloch_evolution(
    s0: Sequence[float],
    field_vector: Sequence[float],
    t_final: float,
    dt: float,
) -> BlochTrajectory:
    """Integrate the Bloch equation Ṡ = S × R with fixed-step RK4.

    The step is shrunk slightly so an integer number of steps lands on t_final.

    Raises:
        BadArgumentError: For dt ≤ 0, t_final < 0 or a zero initial spin.
    """
    spin = np.asarray(s0, dtype=float)
    r = np.asarray(field_vector, dtype=float)
    if dt <= 0:
        raise BadArgumentError(f"Time step must be positive, got {dt}")
    if t_final < 0:
        raise BadArgumentError(f"Final time must be nonnegative, got {t_final}")
    if np.linalg.norm(spin) == 0:
        raise BadArgumentError("Initial spin expectation must be nonzero")

    steps = max(1, math.ceil(t_final / dt - 1e-9))
    h = t_final / steps

    def rate(s: np.ndarray) -> np.ndarray:
        return np.cross(s, r)

    spins = np.empty((steps + 1, 3))
    spins[0] = spin
    for k in range(steps):
        k1 = rate(spin)
        k2 = rate(spin + 0.5 * h * k1)
        k3 = rate(spin + 0.5 * h * k2)
        k4 = rate(spin + h * k3)
        spin = spin + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        spins[k + 1] = spin
    return BlochTrajectory(times=np.linspace(0.0, t_final, steps + 1), spins=spins)


def aharonov_anandan_phase(
    h_of_t: Callable[[float], np.ndarray],
    psi0: np.ndarray,
    period: float,
    steps: int = 2000,
) -> float:
    """Geometric phase of a cyclic evolution as total minus dynamical phase.

    The propagator is a product of matrix exponentials of H at step midpoints.
    Returns γ = arg⟨ψ(0)|ψ(T)⟩ + ∫⟨H⟩dt reduced to (−π, π].
    """
    if period <= 0 or steps < 1:
        raise BadArgumentError("Period must be positive and steps at least 1")
    psi = np.asarray(psi0, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    start = psi.copy()
    dt = period / steps
    dynamical = 0.0
    for k in range(steps):
        h = np.asarray(h_of_t((k + 0.5) * dt), dtype=complex)
        dynamical += float(np.real(psi.conj() @ h @ psi)) * dt
        psi = matrix_exp(-1j * h * dt) @ psi

    overlap = complex(start.conj() @ psi)
    if abs(overlap) < 1e-6:
        logger.warning("Evolution is far from cyclic: |⟨ψ(0)|ψ(T)⟩| = %.2e", abs(overlap))
    return float(wrap_phase(np.angle(overlap) + dynamical))
