"""Per-model observable evaluation for sweeps and single runs.

Every evaluator maps one parameter point to an ordered mapping of named
columns. Column names are ``<observable>_<label>`` where a model carries several
states (``plus``/``minus`` for two-level systems, ``m+0.5`` style labels for
spin j).
"""

import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from monopole.core.chern import SphereGrid, chern_number, eigenstate_function
from monopole.core.classical import (
    ChargedParticleState,
    Orbit,
    conserved_quantities,
    integrate_orbit,
)
from monopole.core.driven import (
    angular_momentum,
    qubit_resonator_quasienergies,
    qubit_resonator_semiclassical,
    rwa_qubit,
    rwa_spin_axis,
    semiclassical_projection,
    semiclassical_rwa_params,
    spin_j_cutoff,
    spin_j_drive,
    spin_j_spin_axis,
    spin_magnetic_numbers,
)
from monopole.core.floquet import (
    FloquetSpectrum,
    PeriodicHamiltonian,
    geometric_phase_direct,
    geometric_phase_hf,
    monopole_spin_projection,
    quasienergies,
    state_by_projection,
    susceptibility,
)
from monopole.core.numerics import ensure_finite, wrap_phase
from monopole.core.parameter_space import latitude_contour, solid_angle
from monopole.core.su3_lambda import triplet_from_angles
from monopole.core.two_level import Band, TwoLevelParams, berry_phase_contour, hamiltonian
from monopole.errors import BadArgumentError, NearDegenerateError
from monopole.models.config import ChernConfig, FloquetConfig
from monopole.models.params import (
    OamBeams,
    OrbitParams,
    QubitResonatorParams,
    RwaQubitParams,
    SpinJParams,
)

logger = logging.getLogger(__name__)

Row = dict[str, float]
AxisOperator = Callable[[float], np.ndarray]

BANDS = (Band.PLUS, Band.MINUS)
DEFAULT_CONTOUR_SAMPLES = 10_000


@dataclass(frozen=True)
class EvaluationContext:
    """Numerical knobs shared by every evaluation."""

    floquet: FloquetConfig = field(default_factory=FloquetConfig)
    chern: ChernConfig = field(default_factory=ChernConfig)
    contour_samples: int = DEFAULT_CONTOUR_SAMPLES

    @property
    def grid(self) -> SphereGrid:
        return self.chern.grid()


def band_label(band: Band) -> str:
    return "plus" if band is Band.PLUS else "minus"


def spin_label(m: float) -> str:
    return f"m{m:+g}"


# Floquet helpers shared by the driven models


def _floquet_columns(
    h: PeriodicHamiltonian,
    targets: Mapping[str, float],
    axis: AxisOperator,
    outputs: list[str],
    ctx: EvaluationContext,
    cutoff: int | None = None,
) -> tuple[Row, FloquetSpectrum, dict[str, int]]:
    """Columns of the Floquet observables for states picked by spin projection."""
    P = cutoff or ctx.floquet.cutoff
    spectrum = quasienergies(h, P, ctx.floquet.samples)
    indices = {
        label: state_by_projection(spectrum, axis, target) for label, target in targets.items()
    }
    if len(set(indices.values())) != len(indices):
        raise NearDegenerateError("Floquet states cannot be told apart by their spin projection")

    row: Row = {}
    for name in outputs:
        for label, index in indices.items():
            if name == "quasienergy":
                row[f"quasienergy_{label}"] = float(spectrum.folded[index])
            elif name == "gamma_direct":
                phase = geometric_phase_direct(spectrum.mode(index))
                row[f"gamma_direct_{label}"] = float(wrap_phase(phase.raw))
            elif name == "gamma_hf":
                raw = geometric_phase_hf(
                    h,
                    index,
                    P,
                    relative_step=ctx.floquet.omega_step,
                    overlap_threshold=ctx.floquet.branch_overlap,
                )
                row[f"gamma_hf_{label}"] = float(wrap_phase(raw))
            elif name == "spin_projection":
                row[f"spin_projection_{label}"] = monopole_spin_projection(
                    spectrum.mode(index), axis, spectrum.thetas
                )
    return row, spectrum, indices


# Models


def rwa_params(values: Mapping[str, Any]) -> RwaQubitParams:
    """RWA parameters from a flat mapping; ``delta`` sets ω = ω₀ − δ."""
    values = dict(values)
    if "delta" in values:
        delta = float(values.pop("delta"))
        return RwaQubitParams.from_detuning(delta, **values)
    return RwaQubitParams.model_validate(values)


def evaluate_rwa(values: Mapping[str, Any], outputs: list[str], ctx: EvaluationContext) -> Row:
    p = rwa_params(values)
    axis = rwa_spin_axis(p)
    targets = {band_label(band): 0.5 * band.sign for band in BANDS}
    floquet_outputs = [name for name in outputs if name != "chi"]
    row, _, indices = _floquet_columns(rwa_qubit(p), targets, axis, floquet_outputs, ctx)

    if "chi" in outputs:

        def family(lam: float) -> PeriodicHamiltonian:
            return rwa_qubit(p.model_copy(update={"lam": lam}))

        for band in BANDS:
            label = band_label(band)
            result = susceptibility(
                family,
                indices[label],
                p.lam,
                ctx.floquet.cutoff,
                overlap_threshold=ctx.floquet.branch_overlap,
            )
            row[f"chi_{label}"] = result.chi
    return _ordered(row, outputs, [band_label(b) for b in BANDS])


def evaluate_jaynes(values: Mapping[str, Any], outputs: list[str], ctx: EvaluationContext) -> Row:
    p = QubitResonatorParams.model_validate(dict(values))
    row: Row = {}
    if "quasienergy" in outputs:
        for band, energy in qubit_resonator_quasienergies(p).items():
            row[f"quasienergy_{band_label(band)}"] = energy

    floquet_outputs = [name for name in outputs if name != "quasienergy"]
    if floquet_outputs:
        h = qubit_resonator_semiclassical(p)
        axis = rwa_spin_axis(semiclassical_rwa_params(p))
        targets = {band_label(band): semiclassical_projection(band) for band in BANDS}
        columns, _, _ = _floquet_columns(h, targets, axis, floquet_outputs, ctx)
        row.update(columns)
    return _ordered(row, outputs, [band_label(b) for b in BANDS])


def spin_state_function(j: float, m: float) -> Callable[[float, float], np.ndarray]:
    """Eigenstate of J·R̂(θ, φ) with eigenvalue m."""
    j1, j2, j3 = angular_momentum(j)
    index = round(m + j)

    def h_fn(theta: float, phi: float) -> np.ndarray:
        return (
            math.sin(theta) * math.cos(phi) * j1
            + math.sin(theta) * math.sin(phi) * j2
            + math.cos(theta) * j3
        )

    return eigenstate_function(h_fn, index)


def evaluate_spinj(values: Mapping[str, Any], outputs: list[str], ctx: EvaluationContext) -> Row:
    p = SpinJParams.model_validate(dict(values))
    m_values = [float(m) for m in spin_magnetic_numbers(p.j)]
    labels = [spin_label(m) for m in m_values]
    row: Row = {}

    floquet_outputs = [name for name in outputs if name != "chern"]
    if floquet_outputs:
        targets = dict(zip(labels, m_values, strict=True))
        cutoff = spin_j_cutoff(p, ctx.floquet.cutoff)
        columns, _, _ = _floquet_columns(
            spin_j_drive(p), targets, spin_j_spin_axis(p), floquet_outputs, ctx, cutoff
        )
        row.update(columns)

    if "chern" in outputs:
        for label, m in zip(labels, m_values, strict=True):
            row[f"chern_{label}"] = chern_number(spin_state_function(p.j, m), ctx.grid).chern
    return _ordered(row, outputs, labels)


def evaluate_two_level(
    values: Mapping[str, Any], outputs: list[str], ctx: EvaluationContext
) -> Row:
    theta = float(values.get("theta", math.pi / 3))
    r = float(values.get("r", 1.0))
    samples = int(values.get("samples", ctx.contour_samples))
    contour = latitude_contour(r, theta, samples)
    labels = [band_label(b) for b in BANDS]
    row: Row = {}

    if "solid_angle" in outputs:
        row["solid_angle"] = solid_angle(contour)
    if "gamma_direct" in outputs:
        for band in BANDS:
            raw = berry_phase_contour(band, contour).raw
            row[f"gamma_direct_{band_label(band)}"] = float(wrap_phase(raw))
    if "chern" in outputs:

        def h_fn(t: float, f: float) -> np.ndarray:
            point = (r * math.sin(t) * math.cos(f), r * math.sin(t) * math.sin(f), r * math.cos(t))
            return hamiltonian(TwoLevelParams.at(*point))

        for band in BANDS:
            state = eigenstate_function(h_fn, band.index)
            row[f"chern_{band_label(band)}"] = chern_number(state, ctx.grid).chern
    return _ordered(row, outputs, labels)


def lambda_state_function(beams: OamBeams, name: str) -> Callable[[float, float], np.ndarray]:
    """Closed-form Λ-system state on the sphere of OAM beam ratios."""

    def state(theta: float, phi: float) -> np.ndarray:
        return triplet_from_angles(theta, beams.l_p * phi, beams.l_c * phi).state(name)

    return state


def evaluate_lambda(values: Mapping[str, Any], outputs: list[str], ctx: EvaluationContext) -> Row:
    beams = OamBeams(
        l_p=round(float(values.get("l_p", 1))),
        l_c=round(float(values.get("l_c", 0))),
    )
    row: Row = {}
    if "chern" in outputs:
        # |±⟩ are single-valued on the sphere only for even l.
        names = ("dark", "plus", "minus") if beams.l % 2 == 0 else ("dark",)
        for name in names:
            row[f"chern_{name}"] = chern_number(lambda_state_function(beams, name), ctx.grid).chern
    return row


def orbit_params(values: Mapping[str, Any]) -> OrbitParams:
    return OrbitParams.model_validate(dict(values))


def run_orbit(p: OrbitParams) -> Orbit:
    """Orbit over [−t_max, t_max] through perihelion at t = 0."""
    start = ChargedParticleState.at_perihelion(p.b, p.v, p.m, p.mu)
    forward = integrate_orbit(start, (0.0, p.t_max), p.step)
    backward = integrate_orbit(start, (0.0, -p.t_max), p.step)
    return Orbit(
        times=np.concatenate((backward.times[::-1], forward.times[1:])),
        positions=np.vstack((backward.positions[::-1], forward.positions[1:])),
        velocities=np.vstack((backward.velocities[::-1], forward.velocities[1:])),
        m=p.m,
        mu=p.mu,
    )


def orbit_diagnostics(p: OrbitParams, orbit: Orbit | None = None) -> Row:
    """Conservation and closure residuals of an orbit."""
    orbit = orbit or run_orbit(p)
    j = orbit.angular_momenta()
    j0 = j[np.argmin(np.abs(orbit.times))]
    norm = float(np.linalg.norm(j0))
    if norm == 0:
        raise BadArgumentError("Orbit has zero total angular momentum")
    j_drift = float(np.max(np.linalg.norm(j - j0, axis=1))) / norm

    radius_residual = float(
        np.max(np.abs(orbit.radii - np.sqrt(p.v**2 * orbit.times**2 + p.b**2)))
    )

    conserved = conserved_quantities(orbit.state(int(np.argmin(np.abs(orbit.times)))))
    axis = conserved.j / np.linalg.norm(conserved.j)
    projections = (orbit.positions / orbit.radii[:, None]) @ axis
    cone_residual = float(np.max(np.abs(projections + math.cos(conserved.cone_angle))))

    end = orbit.state(len(orbit) - 1)
    back = integrate_orbit(end, (float(orbit.times[-1]), 0.0), p.step)
    start = ChargedParticleState.at_perihelion(p.b, p.v, p.m, p.mu)
    reversal = max(
        float(np.linalg.norm(back.positions[-1] - start.r)),
        float(np.linalg.norm(back.velocities[-1] - start.v)),
    )
    row = {
        "j_drift": j_drift,
        "radius_residual": radius_residual,
        "cone_residual": cone_residual,
        "reversal_residual": reversal,
    }
    for name, value in row.items():
        ensure_finite(value, name)
    return row


def evaluate_orbit(values: Mapping[str, Any], outputs: list[str], ctx: EvaluationContext) -> Row:
    del ctx
    return orbit_diagnostics(orbit_params(values)) if "orbit" in outputs else {}


def _ordered(row: Row, outputs: list[str], labels: list[str]) -> Row:
    """Columns in observable order, then label order."""
    ordered: Row = {}
    for name in outputs:
        for label in labels:
            key = f"{name}_{label}"
            if key in row:
                ordered[key] = row[key]
        if name in row:
            ordered[name] = row[name]
    return ordered


EVALUATORS: dict[str, Callable[[Mapping[str, Any], list[str], EvaluationContext], Row]] = {
    "two-level": evaluate_two_level,
    "orbit": evaluate_orbit,
    "rwa": evaluate_rwa,
    "jaynes": evaluate_jaynes,
    "spinj": evaluate_spinj,
    "lambda": evaluate_lambda,
}


def evaluate(
    model: str, values: Mapping[str, Any], outputs: list[str], ctx: EvaluationContext
) -> Row:
    """Evaluate ``outputs`` of ``model`` at one parameter point.

    Raises:
        BadArgumentError: For an unknown model.
        NonFiniteError: If any column is not finite.
    """
    try:
        evaluator = EVALUATORS[model]
    except KeyError:
        raise BadArgumentError(f"Unknown model {model!r}") from None
    row = evaluator(values, outputs, ctx)
    for name, value in row.items():
        ensure_finite(value, name)
    logger.debug("Evaluated %s at %s", model, dict(values))
    return row
