"""Driven quantum systems as periodic Hamiltonians, with closed-form oracles.

Three families: the rotating-wave qubit, the qubit coupled to a resonator (closed
form for n photons, semiclassical drive for a coherent state) and a spin j in a
circularly polarized field.
"""

import cmath
import logging
import math
from collections.abc import Callable

import numpy as np

from monopole.core.floquet import PeriodicHamiltonian
from monopole.core.two_level import SPIN, Band
from monopole.errors import BadArgumentError, BadSpinError, NearDegenerateError
from monopole.models.params import QubitResonatorParams, RwaQubitParams, SpinJParams

logger = logging.getLogger(__name__)

SEMICLASSICAL_ALPHA = 5.0

AxisOperator = Callable[[float], np.ndarray]


# Rotating-wave qubit


def rwa_qubit(p: RwaQubitParams) -> PeriodicHamiltonian:
    """H(t) = [[E₁, λV₀e^{−iωt}/2], [λV₀*e^{iωt}/2, E₂]]."""
    coupling = p.coupling / 2
    lower = np.array([[0, coupling], [0, 0]], dtype=complex)
    return PeriodicHamiltonian(
        dim=2,
        blocks={0: np.diag([p.E1, p.E2]).astype(complex), -1: lower, 1: lower.conj().T},
        omega=p.omega,
    )


def rwa_quasienergies(p: RwaQubitParams, zone: int = 0) -> dict[Band, float]:
    """ε±ᵖ = E₀ + pω + ½(ω ± √(λ²|V₀|² + δ²)) for Floquet zone p."""
    base = p.e0 + zone * p.omega + 0.5 * p.omega
    return {Band.PLUS: base + 0.5 * p.rabi, Band.MINUS: base - 0.5 * p.rabi}


def rwa_phases(p: RwaQubitParams, zone: int = 0) -> dict[Band, float]:
    """γ±ᵖ = ∓π(1 − cosθ) − 2πp."""
    return {
        band: -band.sign * math.pi * (1 - p.cos_theta) - 2 * math.pi * zone
        for band in (Band.PLUS, Band.MINUS)
    }


def rwa_susceptibility(p: RwaQubitParams) -> dict[Band, float]:
    """χ± = ±λ|V₀|²/(2√(λ²|V₀|² + δ²))."""
    value = p.lam * abs(p.V0) ** 2 / (2 * p.rabi)
    return {Band.PLUS: value, Band.MINUS: -value}


def rwa_floquet_vector(p: RwaQubitParams, band: Band, P: int, zone: int = 0) -> np.ndarray:
    """Closed-form Floquet eigenvector on the pair {|1, p⟩, |2, p+1⟩}."""
    if not -P <= zone < P:
        raise BadArgumentError(f"Zone {zone} does not fit inside cutoff {P}")
    half = math.acos(max(-1.0, min(1.0, p.cos_theta))) / 2
    a = cmath.phase(p.V0) if p.V0 != 0 else 0.0
    if band is Band.PLUS:
        first, second = math.cos(half), cmath.exp(-1j * a) * math.sin(half)
    else:
        first, second = -cmath.exp(1j * a) * math.sin(half), math.cos(half)
    vector = np.zeros((2 * P + 1, 2), dtype=complex)
    vector[P + zone, 0] = first
    vector[P + zone + 1, 1] = second
    return vector.ravel()


def rwa_spin_axis(p: RwaQubitParams) -> AxisOperator:
    """ϑ ↦ S·R̂(ϑ) with R̂ = (λ|V₀|cos(ϑ−a), λ|V₀|sin(ϑ−a), δ)/R, a = arg V₀."""
    if p.rabi == 0:
        raise NearDegenerateError("RWA drive sits on the diabolical point (λV₀ = 0, δ = 0)")
    transverse = abs(p.coupling) / p.rabi
    a = cmath.phase(p.V0) if p.V0 != 0 else 0.0
    longitudinal = p.cos_theta

    def operator(theta: float) -> np.ndarray:
        direction = (
            transverse * math.cos(theta - a),
            transverse * math.sin(theta - a),
            longitudinal,
        )
        return np.einsum("i,ijk->jk", direction, SPIN)

    return operator


# Qubit coupled to a resonator


def _check_rabi(p: QubitResonatorParams) -> float:
    rabi = p.rabi_n
    if rabi == 0:
        raise NearDegenerateError("Ωₙ vanishes: resonant and uncoupled, mixing angle undefined")
    return rabi


def qubit_resonator_quasienergies(p: QubitResonatorParams) -> dict[Band, float]:
    """ε±,ₙ = (n + ½)ω_r ∓ Ωₙ/2."""
    base = (p.n + 0.5) * p.omega_r
    return {Band.PLUS: base - 0.5 * p.rabi_n, Band.MINUS: base + 0.5 * p.rabi_n}


def qubit_resonator_phases(p: QubitResonatorParams) -> dict[Band, float]:
    """γ±,ₙ = ±π cosθₙ − 2π(n + ½) with cosθₙ = (ω_r − ω_q)/Ωₙ."""
    cos_theta = (p.omega_r - p.omega_q) / _check_rabi(p)
    offset = 2 * math.pi * (p.n + 0.5)
    return {band: band.sign * math.pi * cos_theta - offset for band in (Band.PLUS, Band.MINUS)}


def qubit_resonator_beta(p: QubitResonatorParams) -> dict[Band, float]:
    """β±,ₙ = √((Ωₙ ± ω_q ∓ ω_r)/(2Ωₙ)); β₊² + β₋² = 1."""
    rabi = _check_rabi(p)
    difference = p.omega_q - p.omega_r
    return {
        Band.PLUS: math.sqrt(max(0.0, (rabi + difference) / (2 * rabi))),
        Band.MINUS: math.sqrt(max(0.0, (rabi - difference) / (2 * rabi))),
    }


def qubit_resonator_semiclassical(p: QubitResonatorParams) -> PeriodicHamiltonian:
    """Qubit driven by the coherent field: RWA form with E = ±ω_q/2, coupling κ, ω = ω_r.

    Raises:
        BadArgumentError: If α < 1.
    """
    if p.alpha < 1:
        raise BadArgumentError(f"Semiclassical drive needs α ≥ 1, got {p.alpha}")
    if p.alpha < SEMICLASSICAL_ALPHA:
        logger.warning("α = %.2f is outside the α ≫ 1 semiclassical regime", p.alpha)
    return rwa_qubit(semiclassical_rwa_params(p))


def semiclassical_rwa_params(p: QubitResonatorParams) -> RwaQubitParams:
    """RWA parameters of the semiclassical qubit–resonator drive."""
    return RwaQubitParams.model_construct(
        E1=0.5 * p.omega_q,
        E2=-0.5 * p.omega_q,
        V0=complex(p.kappa),
        lam=1.0,
        omega=p.omega_r,
    )


def semiclassical_phases(p: QubitResonatorParams) -> dict[Band, float]:
    """γ± = −π(1 ∓ cosθ) with cosθ = (ω_r − ω_q)/√(κ² + (ω_q − ω_r)²).

    The "+" label is the state with monopole spin projection −½ on the RWA axis.
    """
    rabi = p.rabi_semiclassical
    if rabi == 0:
        raise NearDegenerateError("Semiclassical drive sits on the diabolical point")
    cos_theta = (p.omega_r - p.omega_q) / rabi
    return {band: -math.pi * (1 - band.sign * cos_theta) for band in (Band.PLUS, Band.MINUS)}


def semiclassical_projection(band: Band) -> float:
    """Monopole spin projection on the RWA axis carried by a semiclassical label."""
    return -0.5 * band.sign


def berry_limit_phases(p: QubitResonatorParams) -> dict[Band, float]:
    """Adiabatic Berry phases γ± = −π(1 ± c), c = ω_q/√(κ² + ω_q²).

    The ω_r → 0 limit of ``semiclassical_phases``, with the same band labels.
    """
    c = p.omega_q / math.hypot(p.kappa, p.omega_q)
    return {band: -math.pi * (1 + band.sign * c) for band in (Band.PLUS, Band.MINUS)}


# Spin j


def _check_spin(j: float) -> int:
    twice = 2 * j
    if twice <= 0 or abs(twice - round(twice)) > 1e-12:
        raise BadSpinError(f"2j must be a positive integer, got j={j}")
    return round(twice)


def spin_magnetic_numbers(j: float) -> np.ndarray:
    """m = j, j−1, …, −j; the basis order of every spin-j matrix here."""
    twice = _check_spin(j)
    return j - np.arange(twice + 1)


def angular_momentum(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Matrices (J₁, J₂, J₃) in the |j, m⟩ basis ordered m = j..−j.

    Raises:
        BadSpinError: If 2j is not a positive integer.
    """
    m = spin_magnetic_numbers(j)
    raising = np.zeros((len(m), len(m)), dtype=complex)
    # J₊|m⟩ = √(j(j+1) − m(m+1)) |m+1⟩; |m+1⟩ sits one row above |m⟩.
    for col in range(1, len(m)):
        raising[col - 1, col] = math.sqrt(j * (j + 1) - m[col] * (m[col] + 1))
    lowering = raising.conj().T
    j1 = (raising + lowering) / 2
    j2 = (raising - lowering) / 2j
    j3 = np.diag(m).astype(complex)
    return j1, j2, j3


def spin_j_drive(p: SpinJParams) -> PeriodicHamiltonian:
    """H(t) = ω₀J₃ + (V*/2)J₊e^{−iωt} + (V/2)J₋e^{iωt}."""
    j1, j2, j3 = angular_momentum(p.j)
    raising = j1 + 1j * j2
    return PeriodicHamiltonian(
        dim=p.dim,
        blocks={
            0: p.omega0 * j3,
            -1: 0.5 * p.V.conjugate() * raising,
            1: 0.5 * p.V * raising.conj().T,
        },
        omega=p.omega,
    )


def _warn_if_degenerate(p: SpinJParams) -> None:
    if p.rabi == 0:
        logger.warning("Spin-%s drive at the diabolical point: %d-fold degeneracy", p.j, p.dim)


def spin_j_floquet_block(p: SpinJParams) -> np.ndarray:
    """Central Floquet block H_j = −jω·1 + ΔJ₃ + Re(V)J₁ + Im(V)J₂ = −jω + Ω S·R̂.

    Spanned by |j, m; p = −m−j⟩, ordered m = j..−j.

    Raises:
        BadSpinError: If 2j is not a positive integer.
    """
    j1, j2, j3 = angular_momentum(p.j)
    _warn_if_degenerate(p)
    return -p.j * p.omega * np.eye(p.dim) + p.detuning * j3 + p.V.real * j1 + p.V.imag * j2


def spin_j_floquet_elements(p: SpinJParams, P: int) -> np.ndarray:
    """Full truncated Floquet matrix written element by element.

    ⟨m, p|H_F|m', p'⟩ = (mω₀ + pω)δ + (V*/2)√(j(j+1) − m'(m'+1)) δ_{m,m'+1} δ_{p,p'−1}
    + (V/2)√(j(j+1) − m'(m'−1)) δ_{m,m'−1} δ_{p,p'+1}.
    Rows and columns follow the ordering of ``build_floquet_matrix``.
    """
    m_values = spin_magnetic_numbers(p.j)
    n = len(m_values)
    harmonics = range(-P, P + 1)
    size = (2 * P + 1) * n
    matrix = np.zeros((size, size), dtype=complex)
    jj = p.j * (p.j + 1)
    for bp, harmonic in enumerate(harmonics):
        for bq, harmonic_q in enumerate(harmonics):
            for a, m in enumerate(m_values):
                for b, mq in enumerate(m_values):
                    row, col = bp * n + a, bq * n + b
                    if a == b and harmonic == harmonic_q:
                        matrix[row, col] = m * p.omega0 + harmonic * p.omega
                    elif m == mq + 1 and harmonic == harmonic_q - 1:
                        matrix[row, col] = 0.5 * p.V.conjugate() * math.sqrt(jj - mq * (mq + 1))
                    elif m == mq - 1 and harmonic == harmonic_q + 1:
                        matrix[row, col] = 0.5 * p.V * math.sqrt(jj - mq * (mq - 1))
    return matrix


def spin_j_quasienergies(p: SpinJParams) -> np.ndarray:
    """ε_m = −jω + mΩ for m = j..−j."""
    return -p.j * p.omega + spin_magnetic_numbers(p.j) * p.rabi


def spin_j_phases(p: SpinJParams) -> np.ndarray:
    """γ_m = 2π(j + m cosθ) for m = j..−j."""
    if p.rabi == 0:
        raise NearDegenerateError("Mixing angle undefined at the spin-j diabolical point")
    return 2 * math.pi * (p.j + spin_magnetic_numbers(p.j) * p.cos_theta)


def spin_j_cutoff(p: SpinJParams, P: int) -> int:
    """Smallest cutoff ≥ P that holds the full central block."""
    return max(P, _check_spin(p.j))


def spin_j_spin_axis(p: SpinJParams) -> AxisOperator:
    """ϑ ↦ J·R̂(ϑ), R̂ at polar angle θ and azimuth arg V + ϑ."""
    if p.rabi == 0:
        raise NearDegenerateError("Spin-j drive sits on the diabolical point")
    j1, j2, j3 = angular_momentum(p.j)
    sin_theta = abs(p.V) / p.rabi
    cos_theta = p.cos_theta
    azimuth = cmath.phase(p.V) if p.V != 0 else 0.0

    def operator(theta: float) -> np.ndarray:
        angle = azimuth + theta
        return (
            sin_theta * math.cos(angle) * j1
            + sin_theta * math.sin(angle) * j2
            + cos_theta * j3
        )

    return operator
