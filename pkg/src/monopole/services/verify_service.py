"""Acceptance suite: every closed-form identity the toolkit reproduces.

Each check returns its worst residual; it passes when the residual stays within
the named threshold of the (scaled) tolerance record.
"""

import functools
import logging
import math
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from monopole.config.settings import MonopoleSettings
from monopole.core.chern import charge_fluxes, chern_number
from monopole.core.classical import analytic_residuals
from monopole.core.driven import (
    angular_momentum,
    berry_limit_phases,
    qubit_resonator_beta,
    qubit_resonator_phases,
    qubit_resonator_quasienergies,
    rwa_phases,
    rwa_quasienergies,
    rwa_qubit,
    rwa_spin_axis,
    rwa_susceptibility,
    semiclassical_phases,
    semiclassical_projection,
    spin_j_cutoff,
    spin_j_drive,
    spin_j_floquet_elements,
    spin_j_phases,
    spin_j_quasienergies,
    spin_magnetic_numbers,
)
from monopole.core.floquet import (
    PeriodicHamiltonian,
    brillouin_zone_shift,
    build_floquet_matrix,
    extended_inner_product,
    fold_quasienergy,
    quasienergies,
    state_by_projection,
    susceptibility,
)
from monopole.core.numerics import (
    central_diff,
    eigensolve_hermitian,
    jacobi_eigensolve,
    matrix_exp,
    phase_distance,
)
from monopole.core.parameter_space import (
    ParamPoint,
    latitude_contour,
    modulated_contour,
    random_rotation,
    solid_angle,
    winding_number,
)
from monopole.core.su3_lambda import (
    TRIPLET,
    cartan_charge,
    center_element,
    charge_matrix_basic,
    charge_matrix_oam,
    gauge_transformed_potential,
    induced_connection,
    is_quantized,
    lambda_charge,
    linear_path,
    nonabelian_potential,
    spin_hypercharge_decomposition,
    triplet_charge_fluxes,
)
from monopole.core.two_level import (
    SPIN,
    Band,
    StringDirection,
    TwoLevelParams,
    aharonov_anandan_phase,
    analytic_eigvec,
    berry_phase_contour,
    curvature_analytic,
    curvature_from_sum,
    hamiltonian,
    spin_form_field,
    spin_form_field_strength,
    spin_gauge_factorized,
    spin_gauge_transform,
    string_potential,
)
from monopole.errors import BadArgumentError, MonopoleError
from monopole.models.config import ToleranceConfig
from monopole.models.params import (
    OamBeams,
    OrbitParams,
    QubitResonatorParams,
    RwaQubitParams,
    SpinJParams,
)
from monopole.services.observables import (
    BANDS,
    EvaluationContext,
    band_label,
    evaluate_jaynes,
    evaluate_lambda,
    evaluate_rwa,
    evaluate_spinj,
    evaluate_two_level,
    lambda_state_function,
    orbit_diagnostics,
    run_orbit,
    spin_label,
    spin_state_function,
)

logger = logging.getLogger(__name__)

SEED = 1729
GROUPS = (
    "numerics",
    "parameter_space",
    "two_level",
    "classical_dynamics",
    "floquet",
    "models",
    "su3_lambda",
    "chern",
)
LATITUDES = (math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3)
SPINS = (0.5, 1.0, 1.5, 2.0)

CheckFunction = Callable[[EvaluationContext], float]


@dataclass(frozen=True)
class Check:
    group: str
    name: str
    tolerance: str
    run: CheckFunction


@dataclass
class CheckResult:
    """Measured residual of one check against its threshold."""

    group: str
    name: str
    tolerance_name: str
    tolerance: float
    residual: float = math.nan
    seconds: float = 0.0
    error: str | None = None

    @property
    def passed(self) -> bool:
        if self.error is not None or not math.isfinite(self.residual):
            return False
        return self.residual <= self.tolerance


@dataclass
class VerifyReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def seconds(self) -> float:
        return sum(r.seconds for r in self.results)


CHECKS: list[Check] = []


def check(group: str, name: str, tolerance: str) -> Callable[[CheckFunction], CheckFunction]:
    """Register a check under ``group`` measured against ``tolerance``."""
    if group not in GROUPS:
        raise BadArgumentError(f"Unknown check group {group!r}")
    if tolerance not in ToleranceConfig.model_fields:
        raise BadArgumentError(f"Unknown tolerance {tolerance!r}")

    def register(fn: CheckFunction) -> CheckFunction:
        CHECKS.append(Check(group, name, tolerance, fn))
        return fn

    return register


def _rng(offset: int = 0) -> np.random.Generator:
    return np.random.default_rng(SEED + offset)


def _random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


def _circular(a: float, b: float, period: float) -> float:
    d = (a - b) % period
    return min(d, period - d)


def _random_off_string_points(
    rng: np.random.Generator, count: int, n: np.ndarray, margin: float = 0.9
) -> list[ParamPoint]:
    points: list[ParamPoint] = []
    while len(points) < count:
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        if abs(direction @ n) < margin:
            points.append(ParamPoint.from_array(rng.uniform(0.5, 2.0) * direction))
    return points


def _numerical_curl(
    fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float = 1e-5
) -> np.ndarray:
    jacobian = np.zeros((3, 3))
    for j in range(3):
        step = np.zeros(3)
        step[j] = h
        jacobian[:, j] = (fn(x + step) - fn(x - step)) / (2 * h)
    return np.array(
        [
            jacobian[2, 1] - jacobian[1, 2],
            jacobian[0, 2] - jacobian[2, 0],
            jacobian[1, 0] - jacobian[0, 1],
        ]
    )


def _rwa_draws(count: int) -> list[RwaQubitParams]:
    rng = _rng(3)
    draws = []
    for _ in range(count):
        v0 = rng.uniform(0.5, 1.5) * np.exp(1j * rng.uniform(-math.pi, math.pi))
        draws.append(
            RwaQubitParams.from_detuning(
                float(rng.uniform(-2.0, 2.0)), V0=complex(v0), lam=float(rng.uniform(0.05, 1.0))
            )
        )
    return draws


# numerics


@check("numerics", "eigensolver_reconstruction", "eigensolver")
def check_eigensolver_reconstruction(_: EvaluationContext) -> float:
    rng = _rng(1)
    worst = 0.0
    for n in (2, 3, 6, 9):
        m = _random_hermitian(rng, n)
        system = eigensolve_hermitian(m)
        identity = system.vectors.conj().T @ system.vectors - np.eye(n)
        worst = max(worst, float(np.max(np.abs(system.reconstruct() - m))))
        worst = max(worst, float(np.max(np.abs(identity))))
    return worst


@check("numerics", "jacobi_cross_check", "eigensolver")
def check_jacobi_cross_check(_: EvaluationContext) -> float:
    rng = _rng(2)
    worst = 0.0
    for n in (2, 4, 6):
        m = _random_hermitian(rng, n)
        reference = eigensolve_hermitian(m)
        jacobi = jacobi_eigensolve(m)
        worst = max(worst, float(np.max(np.abs(reference.values - jacobi.values))))
        overlaps = np.abs(np.einsum("ij,ij->j", reference.vectors.conj(), jacobi.vectors))
        worst = max(worst, float(np.max(1.0 - overlaps)))
    return worst


@check("numerics", "matrix_exponential", "eigensolver")
def check_matrix_exponential(_: EvaluationContext) -> float:
    rng = _rng(4)
    m = _random_hermitian(rng, 5)
    system = eigensolve_hermitian(m)
    unitary = matrix_exp(1j * m)
    spectral = (system.vectors * np.exp(1j * system.values)) @ system.vectors.conj().T
    return max(
        float(np.max(np.abs(unitary - spectral))),
        float(np.max(np.abs(unitary.conj().T @ unitary - np.eye(5)))),
    )


# parameter_space


@check("parameter_space", "latitude_solid_angle", "holonomy")
def check_latitude_solid_angle(ctx: EvaluationContext) -> float:
    return max(
        abs(
            solid_angle(latitude_contour(1.0, theta, ctx.contour_samples))
            - 2 * math.pi * (1 - math.cos(theta))
        )
        for theta in LATITUDES
    )


@check("parameter_space", "solid_angle_symmetries", "geometry")
def check_solid_angle_symmetries(_: EvaluationContext) -> float:
    rng = _rng(5)
    contour = modulated_contour(1.0, math.pi / 3, 0.2, 3, 400)
    omega = solid_angle(contour)
    worst = _circular(solid_angle(contour.reversed()), -omega, 4 * math.pi)
    for _ in range(5):
        rotated = contour.rotated(random_rotation(rng))
        worst = max(worst, _circular(solid_angle(rotated), omega, 4 * math.pi))
    return max(worst, abs(winding_number(contour) - 1.0))


# two_level


@check("two_level", "holonomy", "holonomy")
def check_holonomy(ctx: EvaluationContext) -> float:
    worst = 0.0
    for theta in LATITUDES:
        contour = latitude_contour(1.0, theta, ctx.contour_samples)
        for band in BANDS:
            expected = -band.sign * math.pi * (1 - math.cos(theta))
            worst = max(worst, phase_distance(berry_phase_contour(band, contour).raw, expected))
    return worst


@check("two_level", "string_gauges", "string_relation")
def check_string_gauges(_: EvaluationContext) -> float:
    rng = _rng(6)
    worst = 0.0
    for direction in (StringDirection(), StringDirection.normalized(rng.normal(size=3))):
        for p in _random_off_string_points(rng, 50, direction.n):
            schwinger = string_potential(0.5, direction, p, "schwinger")
            dirac = string_potential(0.5, direction, p, "dirac")
            opposite = string_potential(0.5, direction.flipped(), p, "dirac")
            worst = max(worst, float(np.max(np.abs(schwinger - 0.5 * (dirac + opposite)))))
    return worst


@check("two_level", "string_curl", "curl")
def check_string_curl(_: EvaluationContext) -> float:
    rng = _rng(7)
    direction = StringDirection.normalized(rng.normal(size=3))
    worst = 0.0
    for p in _random_off_string_points(rng, 20, direction.n, margin=0.8):
        expected = -0.5 * p.as_array() / p.r**3
        for scheme in ("dirac", "schwinger"):

            def potential(x: np.ndarray, scheme: str = scheme) -> np.ndarray:
                return string_potential(-0.5, direction, ParamPoint.from_array(x), scheme)

            curl = _numerical_curl(potential, p.as_array())
            worst = max(worst, float(np.max(np.abs(curl - expected))))
    return worst


@check("two_level", "curvature", "holonomy")
def check_curvature(_: EvaluationContext) -> float:
    rng = _rng(8)
    worst = 0.0
    for _ in range(20):
        point = ParamPoint.from_array(rng.normal(size=3))
        params = TwoLevelParams(lambda0=float(rng.normal()), point=point)
        total = np.zeros((3, 3))
        for band in BANDS:
            numerical = curvature_from_sum(params, band)
            total += numerical
            worst = max(worst, float(np.max(np.abs(numerical - curvature_analytic(band, point)))))
        worst = max(worst, float(np.max(np.abs(total))))
    return worst


@check("two_level", "spin_gauge", "commutator")
def check_spin_gauge(_: EvaluationContext) -> float:
    rng = _rng(9)
    worst = 0.0
    for _ in range(20):
        point = ParamPoint.from_array(rng.normal(size=3))
        lambda0 = float(rng.normal())
        u = spin_gauge_transform(point.theta, point.phi)
        diagonal = 0.5 * lambda0 * np.eye(2) + point.r * SPIN[2]
        h = hamiltonian(TwoLevelParams(lambda0=lambda0, point=point))
        worst = max(worst, float(np.max(np.abs(u - spin_gauge_factorized(point.theta, point.phi)))))
        worst = max(worst, float(np.max(np.abs(u.conj().T @ diagonal @ u - h))))
    return worst


@check("two_level", "spin_form_field", "curl")
def check_spin_form_field(_: EvaluationContext) -> float:
    rng = _rng(10)
    epsilon = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        epsilon[i, j, k], epsilon[j, i, k] = 1.0, -1.0
    worst = 0.0
    for _ in range(10):
        direction = rng.normal(size=3)
        point = ParamPoint.from_array(rng.uniform(0.5, 1.5) * direction / np.linalg.norm(direction))
        b = spin_form_field(point)
        strength = spin_form_field_strength(point)
        worst = max(worst, float(np.max(np.abs(strength - np.einsum("ijk,kab->ijab", epsilon, b)))))
        system = eigensolve_hermitian(hamiltonian(TwoLevelParams(lambda0=0.0, point=point)))
        for band in BANDS:
            u = system.vector(band.index)
            projected = np.real(np.einsum("a,kab,b->k", u.conj(), b, u))
            expected = band.charge * point.as_array() / point.r**3
            worst = max(worst, float(np.max(np.abs(projected - expected))))
    return worst


@check("two_level", "aharonov_anandan", "holonomy")
def check_aharonov_anandan(_: EvaluationContext) -> float:
    worst = 0.0
    for theta in LATITUDES:
        for band in BANDS:
            phase = aharonov_anandan_phase(
                lambda _t: SPIN[2], analytic_eigvec(band, theta, 0.0), 2 * math.pi, steps=200
            )
            expected = -band.sign * math.pi * (1 - math.cos(theta))
            worst = max(worst, phase_distance(phase, expected))
    return worst


# classical_dynamics


@functools.cache
def _reference_orbit_diagnostics() -> dict[str, float]:
    p = OrbitParams(b=1.0, v=1.0, mu=0.5, m=1.0, t_max=10.0)
    orbit = run_orbit(p)
    diagnostics = orbit_diagnostics(p, orbit)
    diagnostics["analytic_residual"] = float(np.max(np.abs(analytic_residuals(orbit))))
    return diagnostics


@check("classical_dynamics", "angular_momentum", "orbit_conservation")
def check_angular_momentum(_: EvaluationContext) -> float:
    diagnostics = _reference_orbit_diagnostics()
    return max(diagnostics["j_drift"], diagnostics["cone_residual"])


@check("classical_dynamics", "radial_motion", "orbit_radius")
def check_radial_motion(_: EvaluationContext) -> float:
    return _reference_orbit_diagnostics()["radius_residual"]


@check("classical_dynamics", "analytic_orbit", "orbit_radius")
def check_analytic_orbit(_: EvaluationContext) -> float:
    return _reference_orbit_diagnostics()["analytic_residual"]


@check("classical_dynamics", "time_reversal", "time_reversal")
def check_time_reversal(_: EvaluationContext) -> float:
    return _reference_orbit_diagnostics()["reversal_residual"]


# floquet


@check("floquet", "rwa_quasienergies", "quasienergy")
def check_rwa_quasienergies(ctx: EvaluationContext) -> float:
    worst = 0.0
    for p in _rwa_draws(10):
        spectrum = quasienergies(rwa_qubit(p), ctx.floquet.cutoff, samples=1)
        expected = [float(fold_quasienergy(e, p.omega)) for e in rwa_quasienergies(p).values()]
        for energy in expected:
            worst = max(worst, min(_circular(energy, e, p.omega) for e in spectrum.folded))
        worst = max(worst, brillouin_zone_shift(spectrum))
    return worst


@check("floquet", "identity", "floquet_identity")
def check_floquet_identity(ctx: EvaluationContext) -> float:
    worst = 0.0
    outputs = ["gamma_direct", "gamma_hf"]
    for p in _rwa_draws(50):
        row = evaluate_rwa(p.model_dump(), outputs, ctx)
        for band in BANDS:
            label = band_label(band)
            direct, hf = row[f"gamma_direct_{label}"], row[f"gamma_hf_{label}"]
            worst = max(worst, phase_distance(direct, hf))
            worst = max(worst, phase_distance(direct, rwa_phases(p)[band]))
    for j in SPINS:
        row = evaluate_spinj({"j": j}, outputs, ctx)
        for m in spin_magnetic_numbers(j):
            label = spin_label(float(m))
            direct, hf = row[f"gamma_direct_{label}"], row[f"gamma_hf_{label}"]
            worst = max(worst, phase_distance(direct, hf))
    return worst


@check("floquet", "rwa_spin_projection", "spin_projection")
def check_rwa_spin_projection(ctx: EvaluationContext) -> float:
    worst = 0.0
    for p in _rwa_draws(10):
        row = evaluate_rwa(p.model_dump(), ["spin_projection"], ctx)
        for band in BANDS:
            worst = max(worst, abs(row[f"spin_projection_{band_label(band)}"] - 0.5 * band.sign))
    return worst


@check("floquet", "mode_orthonormality", "orthonormality")
def check_mode_orthonormality(ctx: EvaluationContext) -> float:
    worst = 0.0
    spin = SpinJParams(j=1.5)
    drives = (
        (rwa_qubit(_rwa_draws(1)[0]), ctx.floquet.cutoff),
        (spin_j_drive(spin), spin_j_cutoff(spin, ctx.floquet.cutoff)),
    )
    for h, P in drives:
        spectrum = quasienergies(h, P, ctx.floquet.samples)
        for a in range(spectrum.size):
            for b in range(spectrum.size):
                overlap = extended_inner_product(spectrum.mode(a), spectrum.mode(b))
                worst = max(worst, abs(overlap - (1.0 if a == b else 0.0)))
    return worst


# models


def _chi_grid() -> list[RwaQubitParams]:
    return [
        RwaQubitParams.from_detuning(float(delta), lam=lam, V0=0.8 + 0.3j)
        for delta in np.linspace(-2.0, 2.0, 5)
        for lam in (0.25, 0.5, 0.75, 1.0)
    ]


@check("models", "rwa_susceptibility", "susceptibility")
def check_rwa_susceptibility(ctx: EvaluationContext) -> float:
    worst = 0.0
    for p in _chi_grid():
        spectrum = quasienergies(rwa_qubit(p), ctx.floquet.cutoff, samples=ctx.floquet.samples)
        axis = rwa_spin_axis(p)
        expected = rwa_susceptibility(p)

        def family(lam: float, p: RwaQubitParams = p) -> PeriodicHamiltonian:
            return rwa_qubit(p.model_copy(update={"lam": lam}))

        for band in BANDS:
            index = state_by_projection(spectrum, axis, 0.5 * band.sign)
            result = susceptibility(
                family,
                index,
                p.lam,
                ctx.floquet.cutoff,
                overlap_threshold=ctx.floquet.branch_overlap,
            )
            worst = max(worst, abs(result.chi - expected[band]), result.identity_residual)
            if p.delta == 0:
                worst = max(worst, abs(result.chi - 0.5 * band.sign * abs(p.V0)))
    return worst


@check("models", "qubit_resonator_slope", "semiclassical")
def check_qubit_resonator_slope(_: EvaluationContext) -> float:
    worst = 0.0
    for omega_r in (0.7, 0.9, 1.0, 1.3):
        for n in (0, 1, 4):
            p = QubitResonatorParams(omega_q=1.0, omega_r=omega_r, lam=0.1, n=n)
            phases = qubit_resonator_phases(p)
            for band in BANDS:

                def energy(x: float, band: Band = band, p: QubitResonatorParams = p) -> float:
                    shifted = p.model_copy(update={"omega_r": x})
                    return qubit_resonator_quasienergies(shifted)[band]

                slope = central_diff(energy, omega_r)
                worst = max(worst, phase_distance(-2 * math.pi * slope, phases[band]))
            beta = qubit_resonator_beta(p)
            worst = max(worst, abs(beta[Band.PLUS] ** 2 + beta[Band.MINUS] ** 2 - 1.0))
    return worst


@check("models", "semiclassical_floquet", "semiclassical")
def check_semiclassical_floquet(ctx: EvaluationContext) -> float:
    worst = 0.0
    for omega_r in (0.6, 0.8, 1.2, 1.5):
        values = {"omega_q": 1.0, "omega_r": omega_r, "lambda": 0.1, "alpha": 10.0}
        row = evaluate_jaynes(values, ["gamma_direct", "spin_projection"], ctx)
        expected = semiclassical_phases(QubitResonatorParams.model_validate(values))
        for band in BANDS:
            label = band_label(band)
            worst = max(worst, phase_distance(row[f"gamma_direct_{label}"], expected[band]))
            projection = row[f"spin_projection_{label}"]
            worst = max(worst, abs(projection - semiclassical_projection(band)))
    return worst


@check("models", "berry_limit", "berry_limit")
def check_berry_limit(ctx: EvaluationContext) -> float:
    values = {"omega_q": 1.0, "omega_r": 0.01 * math.sqrt(2), "lambda": 0.1, "alpha": 10.0}
    row = evaluate_jaynes(values, ["gamma_direct"], ctx)
    worst = 0.0
    for band, limit in berry_limit_phases(QubitResonatorParams.model_validate(values)).items():
        distance = phase_distance(row[f"gamma_direct_{band_label(band)}"], limit)
        worst = max(worst, distance / abs(limit))
    return worst


@check("models", "spin_j_quasienergies", "spin_j")
def check_spin_j_quasienergies(ctx: EvaluationContext) -> float:
    worst = 0.0
    for j in SPINS:
        p = SpinJParams(j=j)
        row = evaluate_spinj({"j": j}, ["quasienergy"], ctx)
        expected = spin_j_quasienergies(p)
        for m, energy in zip(spin_magnetic_numbers(j), expected, strict=True):
            folded = float(fold_quasienergy(float(energy), p.omega))
            computed = row[f"quasienergy_{spin_label(float(m))}"]
            worst = max(worst, _circular(computed, folded, p.omega))
    return worst


@check("models", "spin_j_phases", "floquet_identity")
def check_spin_j_phases(ctx: EvaluationContext) -> float:
    worst = 0.0
    for j in SPINS:
        p = SpinJParams(j=j)
        row = evaluate_spinj({"j": j}, ["gamma_hf"], ctx)
        for m, phase in zip(spin_magnetic_numbers(j), spin_j_phases(p), strict=True):
            worst = max(worst, phase_distance(row[f"gamma_hf_{spin_label(float(m))}"], phase))
    return worst


@check("models", "spin_j_projection", "spin_projection")
def check_spin_j_projection(ctx: EvaluationContext) -> float:
    worst = 0.0
    for j in SPINS:
        row = evaluate_spinj({"j": j}, ["spin_projection"], ctx)
        for m in spin_magnetic_numbers(j):
            worst = max(worst, abs(row[f"spin_projection_{spin_label(float(m))}"] - m))
    return worst


@check("models", "spin_j_matrices", "commutator")
def check_spin_j_matrices(ctx: EvaluationContext) -> float:
    worst = 0.0
    for j in SPINS:
        p = SpinJParams(j=j, V=0.4 - 0.3j)
        P = spin_j_cutoff(p, ctx.floquet.cutoff)
        built = build_floquet_matrix(spin_j_drive(p), P)
        worst = max(worst, float(np.max(np.abs(spin_j_floquet_elements(p, P) - built))))
        matrices = angular_momentum(j)
        for i in range(3):
            a, b, c = matrices[i], matrices[(i + 1) % 3], matrices[(i + 2) % 3]
            worst = max(worst, float(np.max(np.abs(a @ b - b @ a - 1j * c))))
    return worst


# su3_lambda


@check("su3_lambda", "charge_algebra", "center_element")
def check_charge_algebra(_: EvaluationContext) -> float:
    basic = charge_matrix_basic()
    worst = float(np.max(np.abs(center_element(basic) - np.diag([1.0, -1.0, -1.0]))))
    # Q₀ is quantized neither for SU(3) nor for SU(3)/ℤ₃.
    worst = max(worst, float(is_quantized(basic, "SU")), float(is_quantized(basic, "SU/Z")))
    for l in (1, 2, 3):  # noqa: E741
        q = charge_matrix_oam(OamBeams(l_p=l, l_c=0))
        mismatches = [
            q != lambda_charge(-2 * l, -l),
            q.trace != 0,
            spin_hypercharge_decomposition(q).charge() != q,
            spin_hypercharge_decomposition(cartan_charge(-2 * l, -l)).spin != Fraction(-3 * l, 2),
            is_quantized(q, "SU") != (l % 2 == 0),
        ]
        worst = max(worst, float(any(mismatches)))
    return worst


@check("su3_lambda", "charge_flux", "charge_flux")
def check_charge_flux(ctx: EvaluationContext) -> float:
    worst = 0.0
    for q in (charge_matrix_basic(), *(charge_matrix_oam(OamBeams(l_p=l)) for l in (1, 2, 3))):
        numerical = charge_fluxes([float(d) for d in q.diag], ctx.grid)
        worst = max(worst, float(np.max(np.abs(numerical - triplet_charge_fluxes(q)))))
    return worst


@check("su3_lambda", "induced_connection", "connection")
def check_induced_connection(_: EvaluationContext) -> float:
    rng = _rng(11)
    s_values = np.linspace(0.0, 1.0, 21)
    worst = 0.0
    for _ in range(10):
        start = (rng.uniform(0.3, math.pi - 0.3), *rng.uniform(-math.pi / 2, math.pi / 2, 2))
        end = (rng.uniform(0.3, math.pi - 0.3), *rng.uniform(-math.pi / 2, math.pi / 2, 2))
        samples = induced_connection(linear_path(start, end), s_values)
        worst = max(worst, samples.max_deviation())
        total = sum(samples.numerical[name] for name in TRIPLET)
        worst = max(worst, float(np.max(np.abs(total))))
    return worst


@check("su3_lambda", "string_gauge", "connection")
def check_string_gauge(_: EvaluationContext) -> float:
    worst = 0.0
    charges = (
        charge_matrix_basic(),
        charge_matrix_oam(OamBeams(l_p=1)),
        charge_matrix_oam(OamBeams(l_p=2)),
    )
    for q in charges:
        for theta in LATITUDES:
            for phi in (0.0, 1.0, 2.5, 4.0):
                transformed = gauge_transformed_potential(q, theta, phi)
                north = nonabelian_potential(q, theta, "north")
                worst = max(worst, float(np.max(np.abs(transformed - north))))
    return worst


# chern


@check("chern", "two_level", "chern_integer")
def check_two_level_chern(ctx: EvaluationContext) -> float:
    row = evaluate_two_level({"r": 1.0}, ["chern"], ctx)
    plus, minus = row["chern_plus"], row["chern_minus"]
    return max(abs(plus + 1.0), abs(minus - 1.0), abs(plus + minus))


@check("chern", "spin_j", "chern_integer")
def check_spin_j_chern(ctx: EvaluationContext) -> float:
    worst = 0.0
    for j in (0.5, 1.0, 1.5, 2.0):
        for m in spin_magnetic_numbers(j):
            chern = chern_number(spin_state_function(j, float(m)), ctx.grid).chern
            worst = max(worst, abs(chern + 2 * m))
    return worst


@check("chern", "dark_state", "chern_integer")
def check_dark_state_chern(ctx: EvaluationContext) -> float:
    worst = 0.0
    for l in (1, 2, 3):  # noqa: E741
        row = evaluate_lambda({"l_p": l, "l_c": 0}, ["chern"], ctx)
        worst = max(worst, abs(row["chern_dark"] + l))
    beams = OamBeams(l_p=2, l_c=0)
    for name in ("plus", "minus"):
        chern = chern_number(lambda_state_function(beams, name), ctx.grid).chern
        worst = max(worst, abs(chern - beams.l / 2))
    return worst


class VerifyService:
    """Service for running the acceptance checks.

    Thresholds come from the settings' tolerance record after ``tol_scale``.
    """

    def __init__(self, settings: MonopoleSettings):
        """Initialize the verify service.

        Args:
            settings: Loaded settings with tolerances and numerical knobs.
        """
        self.settings = settings
        self.tolerances = settings.effective_tolerances()
        self.context = EvaluationContext(floquet=settings.floquet, chern=settings.chern)

    def checks(self, only: list[str] | None = None) -> list[Check]:
        """Registered checks, restricted to the groups in ``only``.

        Raises:
            BadArgumentError: If ``only`` names an unknown group.
        """
        if not only:
            return list(CHECKS)
        unknown = sorted(set(only) - set(GROUPS))
        if unknown:
            raise BadArgumentError(
                f"Unknown check group(s) {', '.join(unknown)}; choose from {', '.join(GROUPS)}"
            )
        return [c for c in CHECKS if c.group in only]

    def run_check(self, item: Check) -> CheckResult:
        result = CheckResult(
            group=item.group,
            name=item.name,
            tolerance_name=item.tolerance,
            tolerance=getattr(self.tolerances, item.tolerance),
        )
        started = time.perf_counter()
        try:
            result.residual = float(item.run(self.context))
        except (MonopoleError, ArithmeticError, ValueError, np.linalg.LinAlgError) as e:
            logger.warning("Check %s.%s raised %s", item.group, item.name, e)
            result.error = f"{type(e).__name__}: {e}"
        result.seconds = time.perf_counter() - started
        logger.info(
            "%s.%s: residual %.3e (tolerance %.1e)",
            item.group,
            item.name,
            result.residual,
            result.tolerance,
        )
        return result

    def run(self, only: list[str] | None = None) -> VerifyReport:
        """Run the selected checks in registration order."""
        return VerifyReport(results=[self.run_check(item) for item in self.checks(only)])


def verify_all(
    settings: MonopoleSettings | None = None, only: list[str] | None = None
) -> VerifyReport:
    """Run the acceptance checks with default settings unless given."""
    return VerifyService(settings or MonopoleSettings()).run(only)
