"""Λ-type three-level system and SU(3) monopole charges.

Basis order is (|1⟩, |2⟩, |e⟩). At two-photon resonance the coupling Hamiltonian
has a dark state with zero energy and bright/excited superpositions |±⟩ at ±R/2.
Their induced connections on the S³ of (Ω_p, Ω_c) realize the canonical
connection, and their monopole charges sit in the Cartan subalgebra of su(3).
Charges are exact rationals.
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from monopole.core.numerics import TWO_PI, matrix_exp
from monopole.core.two_level import SPIN, spin_gauge_transform
from monopole.errors import (
    BadArgumentError,
    ChartSingularError,
    NotInCartanSpanError,
    ZeroFieldError,
)
from monopole.models.params import LambdaParams, OamBeams

logger = logging.getLogger(__name__)

CHART_EXCLUSION = 1e-6
CONNECTION_STEP = 1e-5
CARTAN_TOL = 1e-12

GAMMA1 = np.diag([0.5, -0.5, 0.0]).astype(complex)
GAMMA2 = (np.diag([1.0, 1.0, -2.0]) / (2 * math.sqrt(3))).astype(complex)

TripletState = Literal["dark", "plus", "minus"]
TRIPLET: tuple[TripletState, ...] = ("dark", "plus", "minus")

ChartPoint = tuple[float, float, float]
"""(θ, φ_p, φ_c) on the S³ chart."""

Path = Callable[[float], ChartPoint]


@dataclass(frozen=True, eq=False)
class DarkBrightStates:
    dark: np.ndarray
    bright: np.ndarray
    plus: np.ndarray
    minus: np.ndarray

    def state(self, name: TripletState) -> np.ndarray:
        return {"dark": self.dark, "plus": self.plus, "minus": self.minus}[name]


@dataclass(frozen=True, eq=False)
class ConnectionSamples:
    """Connection coefficient A_s along a sampled path, numerical and closed form."""

    s: np.ndarray
    numerical: dict[TripletState, np.ndarray]
    closed_form: dict[TripletState, np.ndarray]

    def max_deviation(self) -> float:
        return max(
            float(np.max(np.abs(self.numerical[name] - self.closed_form[name])))
            for name in TRIPLET
        )

    def loop_integral(self, name: TripletState, *, numerical: bool = True) -> float:
        """∫A_s ds by the trapezoid rule over the sampled interval."""
        values = self.numerical[name] if numerical else self.closed_form[name]
        return float(np.trapezoid(values, self.s))


def lambda_hamiltonian(p: LambdaParams) -> np.ndarray:
    """Coupling Hamiltonian: diag(−δ/2, δ/2, 0) plus Ω_p/2, Ω_c/2 couplings to |e⟩."""
    h = np.diag([-p.delta / 2, p.delta / 2, 0.0]).astype(complex)
    h[2, 0] = p.omega_p / 2
    h[2, 1] = p.omega_c / 2
    h[0, 2] = np.conj(h[2, 0])
    h[1, 2] = np.conj(h[2, 1])
    return h


def triplet_from_angles(theta: float, phi_p: float, phi_c: float) -> DarkBrightStates:
    """Closed-form dark, bright and |±⟩ states at chart point (θ, φ_p, φ_c)."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    dark = np.array([-np.exp(1j * phi_c) * c, np.exp(1j * phi_p) * s, 0.0], dtype=complex)
    bright = np.array([np.exp(-1j * phi_p) * s, np.exp(-1j * phi_c) * c, 0.0], dtype=complex)
    excited = np.array([0.0, 0.0, 1.0], dtype=complex)
    return DarkBrightStates(
        dark=dark,
        bright=bright,
        plus=(bright + excited) / math.sqrt(2),
        minus=(bright - excited) / math.sqrt(2),
    )


def dark_bright_states(p: LambdaParams) -> DarkBrightStates:
    """Dark, bright and |±⟩ = (|B⟩ ± |e⟩)/√2 states at two-photon resonance.

    Raises:
        ZeroFieldError: If both Rabi frequencies vanish.
        BadArgumentError: If δ ≠ 0.
    """
    if p.R == 0:
        raise ZeroFieldError("Dark/bright basis is undefined when Ω_p = Ω_c = 0")
    if p.delta != 0:
        raise BadArgumentError("Closed-form dark states require δ = 0; use lambda_hamiltonian")
    return triplet_from_angles(p.theta, p.phi_p, p.phi_c)


def chart_angles(theta: float, phi: float, psi: float) -> ChartPoint:
    """(θ, φ, ψ) → (θ, φ_p, φ_c) with φ = φ_p − φ_c, ψ = φ_p + φ_c."""
    return theta, (psi + phi) / 2, (psi - phi) / 2


def linear_path(start: ChartPoint, end: ChartPoint) -> Path:
    """Straight line in (θ, φ_p, φ_c) for s ∈ [0, 1]."""
    a, b = np.asarray(start, dtype=float), np.asarray(end, dtype=float)

    def path(s: float) -> ChartPoint:
        point = a + s * (b - a)
        return float(point[0]), float(point[1]), float(point[2])

    return path


def closed_form_connection(
    point: Sequence[float], velocity: Sequence[float]
) -> dict[TripletState, float]:
    """A₀ = −(cos²(θ/2)φ̇_c + sin²(θ/2)φ̇_p) and A± = −A₀/2 along a tangent."""
    theta = point[0]
    _, dphi_p, dphi_c = velocity
    dark = -(math.cos(theta / 2) ** 2 * dphi_c + math.sin(theta / 2) ** 2 * dphi_p)
    return {"dark": dark, "plus": -dark / 2, "minus": -dark / 2}


def induced_connection(
    path: Path,
    s_values: Sequence[float] | np.ndarray,
    h: float = CONNECTION_STEP,
) -> ConnectionSamples:
    """Induced connections i⟨state|∂_s state⟩ of the triplet along a path.

    Numerical values use central differences of the closed-form states; the
    closed forms use a central difference of the path itself for the tangent.

    Raises:
        ChartSingularError: If the path comes within 1e-6 of θ = 0 or θ = π.
    """
    s_array = np.asarray(s_values, dtype=float)
    numerical: dict[TripletState, list[float]] = {name: [] for name in TRIPLET}
    closed: dict[TripletState, list[float]] = {name: [] for name in TRIPLET}

    for s in s_array:
        point = path(float(s))
        upper = path(float(s) + h)
        lower = path(float(s) - h)
        for probe in (point, upper, lower):
            if probe[0] < CHART_EXCLUSION or math.pi - probe[0] < CHART_EXCLUSION:
                raise ChartSingularError(f"Path reaches a chart pole at s={s}, θ={probe[0]}")
        here = triplet_from_angles(*point)
        ahead = triplet_from_angles(*upper)
        behind = triplet_from_angles(*lower)
        for name in TRIPLET:
            derivative = (ahead.state(name) - behind.state(name)) / (2 * h)
            numerical[name].append(-float(np.imag(np.vdot(here.state(name), derivative))))

        velocity = tuple((u - v) / (2 * h) for u, v in zip(upper, lower, strict=True))
        for name, value in closed_form_connection(point, velocity).items():
            closed[name].append(value)

    return ConnectionSamples(
        s=s_array,
        numerical={k: np.asarray(v) for k, v in numerical.items()},
        closed_form={k: np.asarray(v) for k, v in closed.items()},
    )


def oam_path(beams: OamBeams, theta: float) -> Path:
    """φ ↦ chart point of Ω_c = R cos(θ/2)e^{il_cφ}, Ω_p = R sin(θ/2)e^{il_pφ}."""

    def path(phi: float) -> ChartPoint:
        return theta, beams.l_p * phi, beams.l_c * phi

    return path


def oam_lambda_params(beams: OamBeams, R: float, theta: float, phi: float) -> LambdaParams:
    return LambdaParams.from_angles(R, theta, beams.l_p * phi, beams.l_c * phi)


def oam_connection_coefficients(beams: OamBeams, theta: float) -> dict[TripletState, float]:
    """Closed-form dφ coefficients of the triplet connections for OAM beams."""
    return closed_form_connection((theta, 0.0, 0.0), (0.0, beams.l_p, beams.l_c))


@dataclass(frozen=True)
class ChargeMatrix:
    """Diagonal traceless monopole charge with exact rational entries."""

    diag: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(Fraction(x) for x in self.diag)
        if not entries:
            raise BadArgumentError("Charge matrix needs at least one entry")
        if sum(entries) != 0:
            raise BadArgumentError(f"Charge matrix must be traceless, trace = {sum(entries)}")
        object.__setattr__(self, "diag", entries)

    @classmethod
    def of(cls, *entries: Fraction | int | str) -> "ChargeMatrix":
        return cls(tuple(Fraction(e) for e in entries))

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def trace(self) -> Fraction:
        return sum(self.diag, Fraction(0))

    def scaled(self, factor: Fraction | int) -> "ChargeMatrix":
        return ChargeMatrix(tuple(Fraction(factor) * d for d in self.diag))

    def as_array(self) -> np.ndarray:
        return np.diag([float(d) for d in self.diag]).astype(complex)

    def as_strings(self) -> list[str]:
        return [str(d) for d in self.diag]


@dataclass(frozen=True)
class CartanDecomposition:
    """Q = spin·Γ₁ + (hypercharge_rational·√3)·Γ₂ for 3×3 charges."""

    spin: Fraction
    hypercharge_rational: Fraction

    @property
    def hypercharge(self) -> float:
        """Coefficient of Γ₂."""
        return float(self.hypercharge_rational) * math.sqrt(3)

    def charge(self) -> ChargeMatrix:
        s, h = self.spin, self.hypercharge_rational
        return ChargeMatrix((s / 2 + h / 2, -s / 2 + h / 2, -h))


def charge_matrix_basic() -> ChargeMatrix:
    """Q₀ = ½·diag(−1, ½, ½) of the (dark, +, −) triplet."""
    return ChargeMatrix.of("-1/2", "1/4", "1/4")


def charge_matrix_oam(b: OamBeams) -> ChargeMatrix:
    """Q_l = ½·diag(−l, l/2, l/2)."""
    return ChargeMatrix.of(Fraction(-b.l, 2), Fraction(b.l, 4), Fraction(b.l, 4))


def cartan_charge(n1: int, n2: int) -> ChargeMatrix:
    """½·diag(n₁, n₂ − n₁, −n₂)."""
    return ChargeMatrix.of(Fraction(n1, 2), Fraction(n2 - n1, 2), Fraction(-n2, 2))


def lambda_charge(n1: int, n2: int) -> ChargeMatrix:
    """¼·diag(n₁, n₂ − n₁, −n₂); Q_l = lambda_charge(−2l, −l)."""
    return cartan_charge(n1, n2).scaled(Fraction(1, 2))


def _as_charge(q: ChargeMatrix | np.ndarray) -> ChargeMatrix:
    if isinstance(q, ChargeMatrix):
        return q
    matrix = np.asarray(q, dtype=complex)
    if matrix.shape != (3, 3):
        raise NotInCartanSpanError(f"Expected a 3×3 matrix, got shape {matrix.shape}")
    off_diagonal = matrix - np.diag(np.diag(matrix))
    diagonal = np.diag(matrix)
    if np.max(np.abs(off_diagonal)) > CARTAN_TOL or np.max(np.abs(diagonal.imag)) > CARTAN_TOL:
        raise NotInCartanSpanError("Matrix has components outside the Cartan subalgebra")
    if abs(diagonal.real.sum()) > CARTAN_TOL:
        raise NotInCartanSpanError("Matrix is not traceless")
    entries = [Fraction(float(x)).limit_denominator(1_000_000) for x in diagonal.real[:2]]
    charge = ChargeMatrix((entries[0], entries[1], -entries[0] - entries[1]))
    if np.max(np.abs(charge.as_array() - matrix)) > CARTAN_TOL:
        raise NotInCartanSpanError("Diagonal entries are not rational to working precision")
    return charge


def spin_hypercharge_decomposition(q: ChargeMatrix | np.ndarray) -> CartanDecomposition:
    """Split a 3×3 charge into its S·R̂ (Γ₁) and hypercharge (Γ₂) parts.

    Raises:
        NotInCartanSpanError: For off-diagonal, non-traceless or non-3×3 input.
    """
    charge = _as_charge(q)
    if charge.n != 3:
        raise NotInCartanSpanError(f"Decomposition is defined for 3×3 charges, got {charge.n}")
    d = charge.diag
    return CartanDecomposition(spin=d[0] - d[1], hypercharge_rational=-d[2])


def su3_gauge_transform(theta: float, phi: float) -> np.ndarray:
    """3×3 unitary acting as the two-level U(θ, −φ) on the first two levels."""
    u = np.eye(3, dtype=complex)
    u[:2, :2] = spin_gauge_transform(theta, -phi)
    return u


def embedded_spin_axis(theta: float, phi: float) -> np.ndarray:
    """S·R̂ on the first two levels, R̂ at polar angle θ and azimuth φ."""
    direction = (
        math.sin(theta) * math.cos(phi),
        math.sin(theta) * math.sin(phi),
        math.cos(theta),
    )
    out = np.zeros((3, 3), dtype=complex)
    out[:2, :2] = np.einsum("i,ijk->jk", direction, SPIN)
    return out


def quantization_numbers(q: ChargeMatrix) -> tuple[Fraction, ...]:
    """qᵢ = −2Qᵢᵢ."""
    return tuple(-2 * d for d in q.diag)


def is_quantized(q: ChargeMatrix, group: Literal["SU", "SU/Z"] = "SU") -> bool:
    """Quantization of a charge for SU(n), or for SU(n)/ℤₙ.

    SU(n) needs every qᵢ integral. SU(n)/ℤₙ needs qᵢ = p/n + integer with a common p.
    """
    numbers = quantization_numbers(q)
    if group == "SU":
        return all(x.denominator == 1 for x in numbers)
    if group == "SU/Z":
        first = numbers[0]
        return (first * q.n).denominator == 1 and all(
            (x - first).denominator == 1 for x in numbers
        )
    raise BadArgumentError(f"Unknown gauge group {group!r}")


def center_element(q: ChargeMatrix) -> np.ndarray:
    """exp(i4πQ)."""
    return matrix_exp(4j * math.pi * q.as_array())


def nonabelian_potential(
    q: ChargeMatrix, theta: float, string: Literal["south", "north"] = "south"
) -> np.ndarray:
    """dφ coefficient Q(1 − cosθ) (south string) or −Q(1 + cosθ) (north string)."""
    if string == "south":
        return q.as_array() * (1 - math.cos(theta))
    if string == "north":
        return -q.as_array() * (1 + math.cos(theta))
    raise BadArgumentError(f"Unknown string position {string!r}")


def string_gauge(q: ChargeMatrix, phi: float) -> np.ndarray:
    """g(φ) = exp(i2Qφ), relating the south- and north-string potentials."""
    return matrix_exp(2j * phi * q.as_array())


def gauge_transformed_potential(
    q: ChargeMatrix, theta: float, phi: float, h: float = 1e-6
) -> np.ndarray:
    """g·A·g⁻¹ + i(∂_φ g)g⁻¹ applied to the south-string potential."""
    g = string_gauge(q, phi)
    g_inv = np.linalg.inv(g)
    dg = (string_gauge(q, phi + h) - string_gauge(q, phi - h)) / (2 * h)
    return g @ nonabelian_potential(q, theta, "south") @ g_inv + 1j * dg @ g_inv


def triplet_charge_fluxes(q: ChargeMatrix) -> np.ndarray:
    """Analytic sphere flux 4π·Qᵢᵢ per component."""
    return 2 * TWO_PI * np.array([float(d) for d in q.diag])
