"""Classical charged particle in the field of a Dirac magnetic monopole.

The particle feels the Lorentz force of B = q·r/r³, m·r̈ = (μ/r³)·ṙ × r with
μ = eq. The total angular momentum J = m r×v − μ r̂ is then conserved, the motion
is confined to a cone about J with cosθ₀ = μ/|J|, and the radius follows the
free-particle law r² = b² + v²t².
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from monopole.core.numerics import unwrap_phase
from monopole.errors import BadArgumentError, OriginApproachError, OutOfRangeError

logger = logging.getLogger(__name__)

ORIGIN_GUARD = 1e-9


@dataclass(frozen=True, eq=False)
class ChargedParticleState:
    """Position, velocity, mass and coupling μ = eq."""

    r: np.ndarray
    v: np.ndarray
    m: float = 1.0
    mu: float = 0.0

    def __post_init__(self) -> None:
        r = np.asarray(self.r, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if r.shape != (3,) or v.shape != (3,):
            raise BadArgumentError("Position and velocity must be 3-vectors")
        if self.m <= 0:
            raise BadArgumentError(f"Mass must be positive, got {self.m}")
        if np.linalg.norm(r) == 0:
            raise BadArgumentError("Particle cannot sit on the monopole")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "v", v)

    @classmethod
    def at_perihelion(
        cls, b: float, v: float, m: float = 1.0, mu: float = 0.0
    ) -> "ChargedParticleState":
        """Particle at distance b on the x axis moving along y with speed v."""
        if b <= 0 or v <= 0:
            raise BadArgumentError("Impact parameter and speed must be positive")
        return cls(r=np.array([b, 0.0, 0.0]), v=np.array([0.0, v, 0.0]), m=m, mu=mu)


@dataclass(frozen=True, eq=False)
class ConservedSet:
    """J = Lg − μr̂, Lg = m r×v, kinetic energy and cone half-angle θ₀."""

    j: np.ndarray
    lg: np.ndarray
    energy: float
    cone_angle: float


@dataclass(frozen=True, eq=False)
class Orbit:
    """Sampled trajectory: ``positions[k]`` and ``velocities[k]`` at ``times[k]``."""

    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    m: float
    mu: float

    def __len__(self) -> int:
        return len(self.times)

    def state(self, index: int) -> ChargedParticleState:
        return ChargedParticleState(
            r=self.positions[index], v=self.velocities[index], m=self.m, mu=self.mu
        )

    @property
    def radii(self) -> np.ndarray:
        return np.linalg.norm(self.positions, axis=1)

    @property
    def speeds(self) -> np.ndarray:
        return np.linalg.norm(self.velocities, axis=1)

    def angular_momenta(self) -> np.ndarray:
        """J(t) at every sample, shape (n, 3)."""
        lg = self.m * np.cross(self.positions, self.velocities)
        return lg - self.mu * self.positions / self.radii[:, None]


def default_orbit_step(b: float, v: float) -> float:
    """Default RK4 step 1e-3·b/v."""
    return 1e-3 * b / v


def _acceleration(r: np.ndarray, v: np.ndarray, coupling: float) -> np.ndarray:
    distance = float(np.linalg.norm(r))
    if distance < ORIGIN_GUARD:
        raise OriginApproachError(f"Trajectory reached |r| = {distance:.3e}")
    return coupling * np.cross(v, r) / distance**3


def integrate_orbit(
    s0: ChargedParticleState,
    t_span: tuple[float, float],
    dt: float,
) -> Orbit:
    """Fixed-step RK4 integration of the monopole equation of motion.

    ``t_span`` may run backwards (t1 < t0). The step magnitude is shrunk so an
    integer number of steps covers the span exactly.

    Raises:
        BadArgumentError: For dt ≤ 0.
        OriginApproachError: If the particle comes within 1e-9 of the origin.
    """
    if dt <= 0:
        raise BadArgumentError(f"Time step must be positive, got {dt}")
    t0, t1 = t_span
    steps = max(1, math.ceil(abs(t1 - t0) / dt - 1e-9))
    h = (t1 - t0) / steps
    coupling = s0.mu / s0.m

    positions = np.empty((steps + 1, 3))
    velocities = np.empty((steps + 1, 3))
    r, v = s0.r.copy(), s0.v.copy()
    positions[0], velocities[0] = r, v

    for k in range(steps):
        a1 = _acceleration(r, v, coupling)
        r2, v2 = r + 0.5 * h * v, v + 0.5 * h * a1
        a2 = _acceleration(r2, v2, coupling)
        r3, v3 = r + 0.5 * h * v2, v + 0.5 * h * a2
        a3 = _acceleration(r3, v3, coupling)
        r4, v4 = r + h * v3, v + h * a3
        a4 = _acceleration(r4, v4, coupling)
        r = r + (h / 6.0) * (v + 2 * v2 + 2 * v3 + v4)
        v = v + (h / 6.0) * (a1 + 2 * a2 + 2 * a3 + a4)
        if np.linalg.norm(r) < ORIGIN_GUARD:
            raise OriginApproachError(f"Trajectory reached the monopole at step {k + 1}")
        positions[k + 1], velocities[k + 1] = r, v

    logger.debug("Integrated %d RK4 steps of size %.3e", steps, h)
    return Orbit(
        times=np.linspace(t0, t1, steps + 1),
        positions=positions,
        velocities=velocities,
        m=s0.m,
        mu=s0.mu,
    )


def conserved_quantities(s: ChargedParticleState) -> ConservedSet:
    """Angular momenta, energy and cone angle of a single state."""
    r_hat = s.r / np.linalg.norm(s.r)
    lg = s.m * np.cross(s.r, s.v)
    j = lg - s.mu * r_hat
    j_norm = float(np.linalg.norm(j))
    cos_cone = s.mu / j_norm if j_norm > 0 else 0.0
    return ConservedSet(
        j=j,
        lg=lg,
        energy=0.5 * s.m * float(s.v @ s.v),
        cone_angle=math.acos(max(-1.0, min(1.0, cos_cone))),
    )


def cone_azimuth(orbit: Orbit) -> np.ndarray:
    """Unwrapped azimuth of r̂ about the initial Ĵ, counterclockwise about Ĵ."""
    j = orbit.angular_momenta()[0]
    axis = j / np.linalg.norm(j)
    r_hat0 = orbit.positions[0] / orbit.radii[0]
    e1 = r_hat0 - (r_hat0 @ axis) * axis
    if np.linalg.norm(e1) < 1e-12:
        raise BadArgumentError("Initial position is parallel to J; azimuth undefined")
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    return unwrap_phase(np.arctan2(orbit.positions @ e2, orbit.positions @ e1))


def analytic_orbit(b: float, v: float, mu: float, m: float, phi: float) -> float:
    """Radius on the orbit b/r = cos((Lg/J)·φ), φ measured from perihelion about J.

    Raises:
        OutOfRangeError: If |φ| reaches the asymptote (J/Lg)·π/2.
    """
    if b <= 0 or v <= 0 or m <= 0:
        raise BadArgumentError("b, v and m must be positive")
    lg = m * v * b
    j = math.hypot(lg, mu)
    ratio = lg / j
    if abs(phi) * ratio >= math.pi / 2:
        raise OutOfRangeError(f"φ={phi} is beyond the asymptote at {(j / lg) * math.pi / 2}")
    return b / math.cos(ratio * phi)


def analytic_residuals(orbit: Orbit) -> np.ndarray:
    """|r(t)| minus the analytic orbit radius at the same cone azimuth.

    The perihelion distance b, its time and azimuth are recovered from the
    initial state, so any starting point works.
    """
    first = orbit.state(0)
    conserved = conserved_quantities(first)
    speed = float(np.linalg.norm(first.v))
    lg = float(np.linalg.norm(conserved.lg))
    if lg == 0 or speed == 0:
        raise BadArgumentError("Head-on or resting particle has no orbit plane")
    b = lg / (first.m * speed)
    j = math.hypot(lg, first.mu)
    t_peri = orbit.times[0] - float(first.r @ first.v) / speed**2
    offset = (j / lg) * math.atan(speed * (orbit.times[0] - t_peri) / b)
    azimuth = cone_azimuth(orbit)
    relative = azimuth - azimuth[0] + offset
    analytic = np.array(
        [analytic_orbit(b, speed, first.mu, first.m, float(phi)) for phi in relative]
    )
    return orbit.radii - analytic


def dirac_quantized(mu: float, tol: float = 1e-12) -> bool:
    """Whether 2μ is an integer, the Dirac quantization condition."""
    return abs(2 * mu - round(2 * mu)) <= tol
