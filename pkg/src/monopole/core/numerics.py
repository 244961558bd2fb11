"""Shared numerical kernels.

Hermitian eigensolve with a deterministic eigenvector gauge, matrix exponential,
central finite differences and phase unwrapping. Everything here is pure and
operates on immutable inputs.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from monopole.errors import JumpTooLargeError, NonFiniteError, NotHermitianError

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
DEGENERACY_TOL = 1e-9
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigen-decomposition of a Hermitian matrix.

    ``vectors[:, i]`` belongs to ``values[i]``; values ascend. Each column is
    gauge-fixed so its largest-magnitude component is real and nonnegative.
    """

    values: np.ndarray
    vectors: np.ndarray
    degenerate: bool = False

    @property
    def size(self) -> int:
        return len(self.values)

    def vector(self, index: int) -> np.ndarray:
        """Return eigenvector ``index`` as a 1-D array."""
        return self.vectors[:, index]

    def reconstruct(self) -> np.ndarray:
        """Rebuild Σ Eᵢ|vᵢ⟩⟨vᵢ|."""
        return (self.vectors * self.values) @ self.vectors.conj().T


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    """Check M = M† entrywise within ``tol``."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-|component| entry is real and nonnegative.

    Ties resolve to the first index, so the result is deterministic and the
    operation is idempotent.
    """
    vectors = np.array(vectors, dtype=complex, copy=True)
    if vectors.ndim == 1:
        return fix_phases(vectors[:, None])[:, 0]
    pivots = np.argmax(np.abs(vectors), axis=0)
    pivot_entries = vectors[pivots, np.arange(vectors.shape[1])]
    magnitudes = np.abs(pivot_entries)
    phases = np.ones_like(pivot_entries)
    nonzero = magnitudes > 0
    phases[nonzero] = pivot_entries[nonzero].conj() / magnitudes[nonzero]
    vectors *= phases
    vectors[pivots, np.arange(vectors.shape[1])] = np.abs(
        vectors[pivots, np.arange(vectors.shape[1])]
    )
    return vectors


def eigensolve_hermitian(
    m: np.ndarray,
    *,
    hermitian_tol: float = HERMITIAN_TOL,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> EigenSystem:
    """Diagonalize a Hermitian matrix.

    Args:
        m: Square complex matrix.
        hermitian_tol: Largest tolerated entry of M − M†.
        degeneracy_tol: Gap threshold, relative to the spectral range, below which
            the result is flagged as degenerate.

    Returns:
        EigenSystem with ascending values and phase-fixed orthonormal vectors.

    Raises:
        NotHermitianError: If M deviates from M† beyond ``hermitian_tol``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"Expected a square matrix, got shape {m.shape}")
    deviation = float(np.max(np.abs(m - m.conj().T), initial=0.0))
    if deviation > hermitian_tol:
        raise NotHermitianError(f"Matrix is not Hermitian: max |M - M†| = {deviation:.3e}")

    values, vectors = scipy.linalg.eigh(0.5 * (m + m.conj().T))
    vectors = fix_phases(vectors)

    degenerate = False
    if len(values) > 1:
        spread = float(values[-1] - values[0])
        threshold = degeneracy_tol * spread if spread > 0 else degeneracy_tol
        degenerate = bool(np.min(np.diff(values)) < threshold)
        if degenerate:
            logger.debug("Near-degenerate spectrum; eigenvector gauge is ambiguous")

    return EigenSystem(values=values, vectors=vectors, degenerate=degenerate)


def jacobi_eigensolve(
    m: np.ndarray, *, tol: float = 1e-14, max_sweeps: int = 100
) -> EigenSystem:
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Independent of LAPACK; used to cross-check ``eigensolve_hermitian``. Each
    rotation first removes the phase of the pivot entry, then applies a real
    Givens rotation that zeroes it.
    """
    a = np.array(m, dtype=complex, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(float(np.linalg.norm(a)), 1.0)

    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= tol * scale * 1e-3:
                    continue
                phase = np.eye(n, dtype=complex)
                phase[q, q] = np.exp(-1j * np.angle(apq))
                b = phase.conj().T @ a @ phase
                angle = 0.5 * math.atan2(2.0 * b[p, q].real, (b[q, q] - b[p, p]).real)
                c, s = math.cos(angle), math.sin(angle)
                rotation = np.eye(n, dtype=complex)
                rotation[p, p] = c
                rotation[q, q] = c
                rotation[p, q] = s
                rotation[q, p] = -s
                step = phase @ rotation
                a = step.conj().T @ a @ step
                v = v @ step

    values = np.real(np.diag(a))
    order = np.argsort(values, kind="stable")
    return EigenSystem(values=values[order], vectors=fix_phases(v[:, order]))


def matrix_exp(m: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring with Padé approximants."""
    return scipy.linalg.expm(np.asarray(m, dtype=complex))


def default_step(x: float) -> float:
    """Default central-difference step max(1e-6, 1e-6·|x|)."""
    return max(1e-6, 1e-6 * abs(x))


def central_diff(f: Callable[[float], float], x: float, h: float | None = None) -> float:
    """Central difference (f(x+h) − f(x−h)) / 2h.

    Raises:
        NonFiniteError: If either evaluation is NaN or infinite.
    """
    if h is None:
        h = default_step(x)
    if h <= 0:
        raise ValueError(f"Step must be positive, got {h}")
    upper = f(x + h)
    lower = f(x - h)
    if not (math.isfinite(upper) and math.isfinite(lower)):
        raise NonFiniteError(f"Non-finite evaluation near x={x}: f(x+h)={upper}, f(x-h)={lower}")
    return (upper - lower) / (2.0 * h)


def wrap_phase(angle: float | np.ndarray) -> float | np.ndarray:
    """Reduce angles to (−π, π]."""
    wrapped = -np.mod(-np.asarray(angle, dtype=float) + math.pi, TWO_PI) + math.pi
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


def phase_distance(a: float, b: float) -> float:
    """Distance between two angles modulo 2π."""
    return abs(float(wrap_phase(a - b)))


def unwrap_phase(angles: np.ndarray | list[float], max_jump: float = math.pi) -> np.ndarray:
    """Remove 2π jumps from an ordered angle sequence.

    The first element is kept; each later element is shifted by a multiple of 2π
    so that successive differences lie in (−π, π].

    Raises:
        JumpTooLargeError: If a reduced successive difference reaches ``max_jump``.
    """
    raw = np.asarray(angles, dtype=float)
    if raw.size < 2:
        return raw.copy()
    steps = np.asarray(wrap_phase(np.diff(raw)))
    worst = float(np.max(np.abs(steps)))
    if worst >= max_jump:
        index = int(np.argmax(np.abs(steps)))
        raise JumpTooLargeError(
            f"Phase jump of {worst:.4f} rad between samples {index} and {index + 1}"
        )
    return np.concatenate(([raw[0]], raw[0] + np.cumsum(steps)))


def link_phases(states: np.ndarray) -> np.ndarray:
    """Return arg⟨ψₖ|ψₖ₊₁⟩ for consecutive rows of ``states``."""
    overlaps = np.einsum("ki,ki->k", states[:-1].conj(), states[1:])
    return np.angle(overlaps)


def ensure_finite(value: float | np.ndarray, what: str) -> None:
    """Raise NonFiniteError when ``value`` holds NaN or infinity."""
    if not np.all(np.isfinite(value)):
        raise NonFiniteError(f"Non-finite {what}")
