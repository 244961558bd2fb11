"""Sphere flux and Chern numbers from link variables.

The sphere minus two polar caps is tiled by (θ, φ) plaquettes. Each plaquette
contributes −arg(U₁U₂U₃U₄) with U = ⟨ψ(a)|ψ(b)⟩ along its edges, traversed so
that dθ∧dφ (outward normal) is positive. The caps are closed with the reduced
holonomy of their boundary latitude, so every link is used twice in opposite
directions and the total flux is an exact multiple of 2π.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from monopole.core.numerics import TWO_PI, central_diff, eigensolve_hermitian, wrap_phase
from monopole.errors import BadArgumentError, NonConvergentError, NonFiniteError

logger = logging.getLogger(__name__)

INTEGER_TOL = 1e-3
MIN_LINK = 1e-12

StateFunction = Callable[[float, float], np.ndarray]


@dataclass(frozen=True)
class SphereGrid:
    """(θ, φ) plaquettes covering the sphere outside two polar caps."""

    n_theta: int = 100
    n_phi: int = 200
    theta_cap: float = 1e-3

    def __post_init__(self) -> None:
        if self.n_theta < 32 or self.n_phi < 64:
            raise BadArgumentError(
                f"Grid needs n_theta ≥ 32 and n_phi ≥ 64, got {self.n_theta}×{self.n_phi}"
            )
        if not 0 < self.theta_cap < math.pi / 4:
            raise BadArgumentError(f"Cap radius must lie in (0, π/4), got {self.theta_cap}")

    @property
    def thetas(self) -> np.ndarray:
        return np.linspace(self.theta_cap, math.pi - self.theta_cap, self.n_theta + 1)

    @property
    def phis(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n_phi) / self.n_phi

    def refined(self) -> "SphereGrid":
        """Grid with both resolutions doubled."""
        return SphereGrid(2 * self.n_theta, 2 * self.n_phi, self.theta_cap)


@dataclass(frozen=True)
class ChernResult:
    flux: float
    chern: float
    integer_residual: float

    @property
    def integer(self) -> int:
        return round(self.chern)

    def as_dict(self) -> dict[str, float]:
        return {
            "flux": self.flux,
            "chern": self.chern,
            "integer_residual": self.integer_residual,
        }


def _sample_states(state_fn: StateFunction, grid: SphereGrid) -> np.ndarray:
    rows = []
    for theta in grid.thetas:
        rows.append([np.asarray(state_fn(float(theta), float(phi))) for phi in grid.phis])
    states = np.asarray(rows, dtype=complex)
    if not np.all(np.isfinite(states)):
        raise NonFiniteError("State function returned non-finite amplitudes")
    return states


def lattice_flux(state_fn: StateFunction, grid: SphereGrid) -> float:
    """Total sphere flux Σ plaquette phases plus both polar caps."""
    states = _sample_states(state_fn, grid)
    along_theta = np.einsum("ijk,ijk->ij", states[:-1].conj(), states[1:])
    along_phi = np.einsum("ijk,ijk->ij", states.conj(), np.roll(states, -1, axis=1))

    smallest = min(np.min(np.abs(along_theta)), np.min(np.abs(along_phi)))
    if smallest < MIN_LINK:
        raise NonConvergentError("Grid does not resolve the state: a link overlap vanishes")

    # Loop (θᵢ,φⱼ) → (θᵢ₊₁,φⱼ) → (θᵢ₊₁,φⱼ₊₁) → (θᵢ,φⱼ₊₁) → (θᵢ,φⱼ).
    plaquettes = (
        along_theta
        * along_phi[1:]
        * np.roll(along_theta, -1, axis=1).conj()
        * along_phi[:-1].conj()
    )
    interior = -float(np.sum(np.angle(plaquettes)))
    north = -float(wrap_phase(np.sum(np.angle(along_phi[0]))))
    south = float(wrap_phase(np.sum(np.angle(along_phi[-1]))))
    logger.debug("Flux: interior %.6f, caps %.2e / %.2e", interior, north, south)
    return interior + north + south


def chern_number(
    state_fn: StateFunction,
    grid: SphereGrid | None = None,
    *,
    integer_tol: float = INTEGER_TOL,
) -> ChernResult:
    """Chern number (1/2π)·flux of a state family over the sphere.

    Raises:
        NonConvergentError: If the result is more than ``integer_tol`` from an integer.
    """
    grid = grid or SphereGrid()
    flux = lattice_flux(state_fn, grid)
    chern = flux / TWO_PI
    residual = abs(chern - round(chern))
    if residual > integer_tol:
        raise NonConvergentError(f"Chern sum {chern:.6f} is not near an integer")
    return ChernResult(flux=flux, chern=chern, integer_residual=residual)


def flux_of_curvature(
    f_theta_phi: Callable[[float, float], float],
    grid: SphereGrid | None = None,
    *,
    caps: tuple[float, float] = (0.0, 0.0),
) -> float:
    """Sphere flux ∫∫ F_θφ dθ dφ by quadrature over the grid.

    θ is integrated with ``grid.n_theta`` Gauss-Legendre nodes on
    [θ_cap, π − θ_cap] and φ with the grid's uniform periodic points. ``caps``
    carries the flux through the north and south caps.

    Raises:
        NonFiniteError: If the curvature is not finite on a node.
    """
    grid = grid or SphereGrid()
    nodes, weights = np.polynomial.legendre.leggauss(grid.n_theta)
    lo, hi = grid.theta_cap, math.pi - grid.theta_cap
    half = 0.5 * (hi - lo)
    thetas = half * nodes + 0.5 * (hi + lo)
    values = np.array([[f_theta_phi(float(t), float(p)) for p in grid.phis] for t in thetas])
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("Curvature is not finite on the quadrature grid")
    interior = float(half * weights @ values.sum(axis=1)) * TWO_PI / grid.n_phi
    logger.debug("Curvature flux: interior %.12f, caps %.2e / %.2e", interior, *caps)
    return interior + caps[0] + caps[1]


def flux_of_connection(a_phi: Callable[[float], float], grid: SphereGrid | None = None) -> float:
    """Sphere flux of an Abelian connection A = A_φ(θ)dφ.

    The interior carries F_θφ = ∂θA_φ, differentiated numerically and passed to
    ``flux_of_curvature``. Each cap is closed by the holonomy difference across
    it, 2π(A_φ(θ_cap) − A_φ(0)) in the north.

    Raises:
        NonConvergentError: If A_φ is not finite at a pole.
    """
    grid = grid or SphereGrid()
    cap = grid.theta_cap
    edges = [a_phi(t) for t in (0.0, cap, math.pi - cap, math.pi)]
    if not all(math.isfinite(v) for v in edges):
        raise NonConvergentError("Connection is not finite at both poles")
    caps = (TWO_PI * (edges[1] - edges[0]), TWO_PI * (edges[3] - edges[2]))
    return flux_of_curvature(lambda t, _p: central_diff(a_phi, t), grid, caps=caps)


def charge_fluxes(diag: list[float] | np.ndarray, grid: SphereGrid | None = None) -> np.ndarray:
    """Per-component flux of a diagonal charge with F = Q sinθ dθ∧dφ."""
    grid = grid or SphereGrid()
    cap_area = TWO_PI * (1.0 - math.cos(grid.theta_cap))
    return np.array(
        [
            flux_of_curvature(
                lambda t, _p, q=float(q): q * math.sin(t), grid, caps=(q * cap_area, q * cap_area)
            )
            for q in diag
        ]
    )


def eigenstate_function(
    h_fn: Callable[[float, float], np.ndarray], index: int
) -> StateFunction:
    """State function returning eigenvector ``index`` (ascending) of H(θ, φ)."""

    def state(theta: float, phi: float) -> np.ndarray:
        return eigensolve_hermitian(h_fn(theta, phi)).vector(index)

    return state
