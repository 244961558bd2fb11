"""Floquet engine for time-periodic Hamiltonians.

H(t) = Σₖ H⁽ᵏ⁾ e^{ikωt} is mapped onto the time-independent Floquet matrix in the
harmonic basis |n, p⟩, blocks (p, q) = H⁽ᵖ⁻ᑫ⁾ + pω·δ_pq. Its eigenvectors c give
periodic modes Φ(ϑ) = Σₚ c_p e^{ipϑ}, ϑ = ωt. Geometric phases follow either from
overlap products of the modes around ϑ ∈ [0, 2π) or from the quasienergy slope
γ = −2π ∂ε/∂ω.
"""

import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field, replace

import numpy as np

from monopole.core.numerics import (
    TWO_PI,
    EigenSystem,
    default_step,
    eigensolve_hermitian,
    ensure_finite,
    link_phases,
)
from monopole.errors import (
    BadArgumentError,
    BranchJumpError,
    ConvergenceFailError,
    CutoffTooSmallError,
    NotHermitianError,
    UnderSampledError,
)

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 4
DEFAULT_SAMPLES = 512
MIN_DIRECT_SAMPLES = 256
CONVERGENCE_TOL = 1e-8
BRANCH_OVERLAP = 0.9
OMEGA_STEP = 1e-5
MAX_LINK_PHASE = math.pi / 4
# ϑ = 0 overlap above which two candidates are the same physical state.
SAME_STATE_OVERLAP = 0.5


@dataclass(frozen=True, eq=False)
class PeriodicHamiltonian:
    """Fourier blocks H⁽ᵏ⁾ of a drive with frequency ω.

    Missing harmonics are zero. H⁽⁻ᵏ⁾ must equal (H⁽ᵏ⁾)†.
    """

    dim: int
    blocks: Mapping[int, np.ndarray]
    omega: float
    hermitian_tol: float = field(default=1e-12, repr=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise BadArgumentError(f"Dimension must be at least 1, got {self.dim}")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise BadArgumentError(f"Drive frequency must be positive, got {self.omega}")

        blocks: dict[int, np.ndarray] = {}
        for k, block in self.blocks.items():
            matrix = np.asarray(block, dtype=complex)
            if matrix.shape != (self.dim, self.dim):
                raise BadArgumentError(
                    f"Harmonic {k} has shape {matrix.shape}, expected {(self.dim, self.dim)}"
                )
            ensure_finite(matrix, f"harmonic {k}")
            blocks[int(k)] = matrix

        zero = np.zeros((self.dim, self.dim), dtype=complex)
        for k, matrix in blocks.items():
            partner = blocks.get(-k, zero)
            deviation = float(np.max(np.abs(partner - matrix.conj().T)))
            if deviation > self.hermitian_tol:
                raise NotHermitianError(
                    f"H({-k}) differs from H({k})† by {deviation:.3e}; H(t) is not Hermitian"
                )
        object.__setattr__(self, "blocks", blocks)

    @property
    def max_harmonic(self) -> int:
        nonzero = [abs(k) for k, m in self.blocks.items() if np.any(m != 0)]
        return max(nonzero, default=0)

    def block(self, k: int) -> np.ndarray:
        return self.blocks.get(k, np.zeros((self.dim, self.dim), dtype=complex))

    def at(self, t: float) -> np.ndarray:
        """H(t)."""
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for k, matrix in self.blocks.items():
            total += matrix * np.exp(1j * k * self.omega * t)
        return total

    def with_omega(self, omega: float) -> "PeriodicHamiltonian":
        """Same Fourier blocks driven at a different frequency."""
        return replace(self, omega=omega)


@dataclass(frozen=True, eq=False)
class FloquetSpectrum:
    """Physical Floquet states selected from one truncated Floquet matrix.

    ``coefficients[i]`` has shape (2P+1, dim) with row P+p holding c_p, and
    ``modes[i]`` samples Φᵢ(ϑ) at ``thetas``. Modes belong to the ``unfolded``
    representative; ``folded`` values lie in [−ω/2, ω/2). States are ordered by
    folded quasienergy.
    """

    omega: float
    cutoff: int
    dim: int
    folded: np.ndarray
    unfolded: np.ndarray
    coefficients: np.ndarray
    thetas: np.ndarray
    modes: np.ndarray
    floquet_values: np.ndarray
    residual: float

    @property
    def size(self) -> int:
        return len(self.folded)

    @property
    def harmonics(self) -> np.ndarray:
        return np.arange(-self.cutoff, self.cutoff + 1)

    def mode(self, index: int) -> np.ndarray:
        """Samples of Φ_index(ϑ), shape (M, dim)."""
        return self.modes[index]

    def vector(self, index: int) -> np.ndarray:
        """Flattened Floquet eigenvector of a state."""
        return self.coefficients[index].ravel()


@dataclass(frozen=True)
class DirectPhase:
    raw: float
    phase: float


@dataclass(frozen=True)
class Susceptibility:
    """χ = ∂ε/∂λ and the matrix-element side ⟨⟨Φ|λV|Φ⟩⟩ of the same state."""

    chi: float
    matrix_element: float
    lam: float

    @property
    def identity_residual(self) -> float:
        return abs(self.matrix_element - self.lam * self.chi)


def fold_quasienergy(value: float | np.ndarray, omega: float) -> float | np.ndarray:
    """Reduce quasienergies to the zone [−ω/2, ω/2)."""
    folded = value - omega * np.floor(np.asarray(value) / omega + 0.5)
    if np.ndim(folded) == 0:
        return float(folded)
    return folded


def build_floquet_matrix(h: PeriodicHamiltonian, P: int) -> np.ndarray:
    """Assemble the (2P+1)N square Floquet matrix.

    Raises:
        CutoffTooSmallError: If P is below the highest nonzero harmonic.
    """
    if P < max(h.max_harmonic, 0):
        raise CutoffTooSmallError(f"Cutoff P={P} is below the drive harmonic {h.max_harmonic}")
    n = h.dim
    size = (2 * P + 1) * n
    matrix = np.zeros((size, size), dtype=complex)
    identity = np.eye(n)
    for row, p in enumerate(range(-P, P + 1)):
        for col, q in enumerate(range(-P, P + 1)):
            block = h.block(p - q)
            if p == q:
                block = block + p * h.omega * identity
            matrix[row * n : (row + 1) * n, col * n : (col + 1) * n] = block
    return matrix


def floquet_eigensystem(h: PeriodicHamiltonian, P: int) -> EigenSystem:
    """Eigen-decomposition of the full truncated Floquet matrix."""
    return eigensolve_hermitian(build_floquet_matrix(h, P))


def _select_physical(system: EigenSystem, n: int, P: int) -> list[int]:
    """Pick one eigenvector per physical state, most concentrated at p = 0."""
    coefficients = system.vectors.T.reshape(system.size, 2 * P + 1, n)
    central_weight = np.sum(np.abs(coefficients[:, P, :]) ** 2, axis=1)
    order = np.argsort(-central_weight, kind="stable")

    chosen: list[int] = []
    anchors: list[np.ndarray] = []
    for candidate in order:
        at_zero = coefficients[candidate].sum(axis=0)
        norm = np.linalg.norm(at_zero)
        if norm == 0:
            continue
        at_zero = at_zero / norm
        if all(abs(np.vdot(a, at_zero)) < SAME_STATE_OVERLAP for a in anchors):
            chosen.append(int(candidate))
            anchors.append(at_zero)
        if len(chosen) == n:
            break
    if len(chosen) < n:
        raise ConvergenceFailError(f"Only {len(chosen)} of {n} physical Floquet states resolved")
    return chosen


def _spectrum_from_system(
    h: PeriodicHamiltonian, P: int, system: EigenSystem, matrix: np.ndarray, samples: int
) -> FloquetSpectrum:
    n = h.dim
    chosen = _select_physical(system, n, P)
    unfolded = system.values[chosen]
    folded = np.asarray(fold_quasienergy(unfolded, h.omega))
    order = np.argsort(folded, kind="stable")
    chosen = [chosen[i] for i in order]

    coefficients = system.vectors[:, chosen].T.reshape(len(chosen), 2 * P + 1, n)
    thetas = TWO_PI * np.arange(samples) / samples
    phases = np.exp(1j * np.outer(thetas, np.arange(-P, P + 1)))
    modes = np.einsum("kp,spn->skn", phases, coefficients)

    vectors = system.vectors[:, chosen]
    residual = float(np.max(np.abs(matrix @ vectors - vectors * system.values[chosen])))
    return FloquetSpectrum(
        omega=h.omega,
        cutoff=P,
        dim=n,
        folded=folded[order],
        unfolded=unfolded[order],
        coefficients=coefficients,
        thetas=thetas,
        modes=modes,
        floquet_values=system.values,
        residual=residual,
    )


def _circular_mismatch(a: np.ndarray, b: np.ndarray, period: float) -> float:
    worst = 0.0
    for value in a:
        distance = np.abs((b - value + period / 2) % period - period / 2)
        worst = max(worst, float(np.min(distance)))
    return worst


def quasienergies(
    h: PeriodicHamiltonian,
    P: int = DEFAULT_CUTOFF,
    samples: int = DEFAULT_SAMPLES,
    *,
    check_convergence: bool = True,
    convergence_tol: float = CONVERGENCE_TOL,
) -> FloquetSpectrum:
    """Quasienergies and periodic modes of the physical states.

    Args:
        h: Periodic Hamiltonian.
        P: Harmonic cutoff; the matrix spans p = −P..P.
        samples: Number of uniform ϑ samples of each mode.
        check_convergence: Repeat at P+2 and compare folded spectra.
        convergence_tol: Largest tolerated shift between the two cutoffs.

    Returns:
        FloquetSpectrum with ``h.dim`` states.

    Raises:
        CutoffTooSmallError: If P is below the drive harmonic.
        ConvergenceFailError: If the spectrum moves by more than ``convergence_tol``.
    """
    if samples < 1:
        raise BadArgumentError(f"Need at least one ϑ sample, got {samples}")
    matrix = build_floquet_matrix(h, P)
    system = eigensolve_hermitian(matrix)
    spectrum = _spectrum_from_system(h, P, system, matrix, samples)

    if check_convergence:
        finer = quasienergies(h, P + 2, samples=1, check_convergence=False)
        shift = _circular_mismatch(spectrum.folded, finer.folded, h.omega)
        if shift > convergence_tol:
            raise ConvergenceFailError(
                f"Quasienergies moved by {shift:.3e} between cutoffs {P} and {P + 2}"
            )
        logger.debug("Cutoff %d converged: shift %.2e", P, shift)
    return spectrum


def geometric_phase_direct(
    mode: np.ndarray, *, min_samples: int = MIN_DIRECT_SAMPLES
) -> DirectPhase:
    """γ = i∮⟨Φ|∂_ϑΦ⟩dϑ from overlap products around the closed ϑ loop.

    For an even sample count the loop is also summed over every second sample
    and the two sums are Richardson-combined, removing the O(1/M²) term.

    Args:
        mode: Samples Φ(ϑₖ) at uniform ϑₖ = 2πk/M, shape (M, dim).
        min_samples: Smallest accepted M.

    Raises:
        BadArgumentError: If fewer than ``min_samples`` samples are given.
        UnderSampledError: If any adjacent overlap has |arg| ≥ π/4.
    """
    mode = np.asarray(mode, dtype=complex)
    if mode.ndim != 2 or len(mode) < min_samples:
        raise BadArgumentError(f"Mode needs at least {min_samples} ϑ samples")
    loop = np.vstack((mode, mode[:1]))
    links = link_phases(loop)
    if np.max(np.abs(links)) >= MAX_LINK_PHASE:
        raise UnderSampledError(
            f"Adjacent mode samples differ by phase {np.max(np.abs(links)):.3f} ≥ π/4"
        )
    raw = -float(np.sum(links))
    if len(mode) % 2 == 0:
        coarse = -float(np.sum(link_phases(np.vstack((mode[::2], mode[:1])))))
        raw = (4.0 * raw - coarse) / 3.0
    return DirectPhase(raw=raw, phase=math.fmod(raw, TWO_PI))


def track_state(
    vector: np.ndarray,
    system: EigenSystem,
    threshold: float = BRANCH_OVERLAP,
) -> int:
    """Index of the eigenvector in ``system`` with the largest overlap with ``vector``.

    Raises:
        BranchJumpError: If the best overlap is below ``threshold``.
    """
    overlaps = np.abs(system.vectors.conj().T @ vector)
    best = int(np.argmax(overlaps))
    if overlaps[best] < threshold:
        raise BranchJumpError(
            f"Best branch overlap {overlaps[best]:.3f} is below threshold {threshold}"
        )
    return best


def _tracked_derivative(
    vector: np.ndarray,
    family: Callable[[float], PeriodicHamiltonian],
    x: float,
    h: float,
    P: int,
    threshold: float,
) -> float:
    energies = []
    for sign in (1.0, -1.0):
        system = floquet_eigensystem(family(x + sign * h), P)
        energies.append(system.values[track_state(vector, system, threshold)])
    derivative = (energies[0] - energies[1]) / (2.0 * h)
    ensure_finite(derivative, "quasienergy derivative")
    return float(derivative)


def geometric_phase_hf(
    h: PeriodicHamiltonian,
    index: int,
    P: int = DEFAULT_CUTOFF,
    *,
    relative_step: float = OMEGA_STEP,
    overlap_threshold: float = BRANCH_OVERLAP,
) -> float:
    """γ = −2π ∂ε/∂ω with the state followed by maximal overlap.

    Returns the unreduced value; compare with ``geometric_phase_direct`` mod 2π.

    Raises:
        BranchJumpError: If the state cannot be followed to ω ± h.
    """
    spectrum = quasienergies(h, P, samples=1, check_convergence=False)
    slope = _tracked_derivative(
        spectrum.vector(index),
        h.with_omega,
        h.omega,
        relative_step * h.omega,
        P,
        overlap_threshold,
    )
    return -TWO_PI * slope


def susceptibility(
    family: Callable[[float], PeriodicHamiltonian],
    index: int,
    lam: float,
    P: int = DEFAULT_CUTOFF,
    *,
    step: float | None = None,
    overlap_threshold: float = BRANCH_OVERLAP,
) -> Susceptibility:
    """Generalized susceptibility χ = ∂ε/∂λ of a tracked Floquet state.

    Args:
        family: λ ↦ periodic Hamiltonian; must accept λ ± step.
        index: State position in the spectrum at λ.
        lam: Perturbation strength, λ ≥ 0.
        P: Harmonic cutoff.
        step: Finite-difference step; defaults to max(1e-6, 1e-6·λ).
        overlap_threshold: Branch-tracking threshold.

    Returns:
        Susceptibility with χ and ⟨⟨Φ|λ ∂H/∂λ|Φ⟩⟩.

    Raises:
        BadArgumentError: If λ < 0.
        BranchJumpError: If the state cannot be followed to λ ± step.
    """
    if lam < 0:
        raise BadArgumentError(f"Perturbation strength must be nonnegative, got {lam}")
    h = step if step is not None else default_step(lam)
    spectrum = quasienergies(family(lam), P, samples=1, check_convergence=False)
    vector = spectrum.vector(index)
    chi = _tracked_derivative(vector, family, lam, h, P, overlap_threshold)

    derivative = (
        build_floquet_matrix(family(lam + h), P) - build_floquet_matrix(family(lam - h), P)
    ) / (2.0 * h)
    element = float(np.real(np.vdot(vector, derivative @ vector)))
    return Susceptibility(chi=chi, matrix_element=lam * element, lam=lam)


def monopole_spin_projection(
    mode: np.ndarray,
    axis_operator: Callable[[float], np.ndarray],
    thetas: np.ndarray | None = None,
) -> float:
    """ϑ-average of ⟨Φ(ϑ)|S·R̂(ϑ)|Φ(ϑ)⟩ with Φ normalized at every ϑ."""
    mode = np.asarray(mode, dtype=complex)
    if thetas is None:
        thetas = TWO_PI * np.arange(len(mode)) / len(mode)
    values = []
    for theta, state in zip(thetas, mode, strict=True):
        operator = axis_operator(float(theta))
        values.append(np.real(np.vdot(state, operator @ state)) / np.real(np.vdot(state, state)))
    return float(np.mean(values))


def state_by_projection(
    spectrum: FloquetSpectrum,
    axis_operator: Callable[[float], np.ndarray],
    target: float,
) -> int:
    """Index of the state whose monopole spin projection is closest to ``target``."""
    projections = [
        monopole_spin_projection(spectrum.mode(i), axis_operator, spectrum.thetas)
        for i in range(spectrum.size)
    ]
    return int(np.argmin(np.abs(np.asarray(projections) - target)))


def extended_inner_product(a: np.ndarray, b: np.ndarray) -> complex:
    """⟨⟨a|b⟩⟩ = ∫dϑ/2π ⟨a(ϑ)|b(ϑ)⟩ on uniformly sampled modes."""
    return complex(np.mean(np.einsum("kn,kn->k", np.conj(a), b)))


def brillouin_zone_shift(spectrum: FloquetSpectrum) -> float:
    """Largest distance from εᵢ ± ω to the nearest eigenvalue of the Floquet matrix."""
    values = spectrum.floquet_values
    worst = 0.0
    for energy in spectrum.unfolded:
        for shifted in (energy + spectrum.omega, energy - spectrum.omega):
            worst = max(worst, float(np.min(np.abs(values - shifted))))
    return worst
