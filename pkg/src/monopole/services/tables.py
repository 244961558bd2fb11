"""Result tables of the single-model commands."""

import logging
import math
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any, Literal

import numpy as np

from monopole.config.settings import MonopoleSettings
from monopole.core.chern import StateFunction, charge_fluxes, chern_number, eigenstate_function
from monopole.core.classical import analytic_residuals
from monopole.core.driven import spin_magnetic_numbers
from monopole.core.floquet import geometric_phase_direct, geometric_phase_hf, quasienergies
from monopole.core.numerics import TWO_PI, wrap_phase
from monopole.core.su3_lambda import (
    TRIPLET,
    charge_matrix_oam,
    is_quantized,
    oam_connection_coefficients,
    spin_hypercharge_decomposition,
    triplet_charge_fluxes,
)
from monopole.core.two_level import TwoLevelParams, hamiltonian
from monopole.errors import BadArgumentError
from monopole.models.config import FloquetModelFile
from monopole.models.params import OamBeams, OrbitParams
from monopole.services.observables import (
    BANDS,
    EvaluationContext,
    band_label,
    evaluate,
    lambda_state_function,
    run_orbit,
    spin_label,
    spin_state_function,
)
from monopole.services.output import ResultTable
from monopole.services.sweep_service import load_spec_file

logger = logging.getLogger(__name__)

ChernModel = Literal["two-level", "spinj", "lambda"]
CHERN_MODELS: tuple[ChernModel, ...] = ("two-level", "spinj", "lambda")

TWO_LEVEL_COLUMNS = {
    "gamma_direct_plus": "gamma_plus",
    "gamma_direct_minus": "gamma_minus",
    "solid_angle": "omega_solid",
    "chern_plus": "chern_plus",
    "chern_minus": "chern_minus",
}


def _cell(value: Any) -> Any:
    if isinstance(value, complex):
        return str(value)
    return value


def evaluation_context(settings: MonopoleSettings) -> EvaluationContext:
    return EvaluationContext(floquet=settings.floquet, chern=settings.chern)


def point_table(
    model: str,
    points: Sequence[Mapping[str, Any]],
    outputs: list[str],
    ctx: EvaluationContext,
) -> ResultTable:
    """Evaluate ``outputs`` of ``model`` at each point, one row per point.

    Columns are the point's parameters followed by the observable columns in
    first-seen order.
    """
    parameters: list[str] = []
    rows = []
    for point in points:
        for name in point:
            if name not in parameters:
                parameters.append(name)
        cells = {name: _cell(value) for name, value in point.items()}
        rows.append({**cells, **evaluate(model, point, outputs, ctx)})

    columns = list(parameters)
    for row in rows:
        columns.extend(name for name in row if name not in columns)
    table = ResultTable(columns=columns)
    for row in rows:
        table.append(row)
    return table


def two_level_table(
    thetas: Sequence[float],
    r: float,
    samples: int,
    outputs: list[str],
    ctx: EvaluationContext,
) -> ResultTable:
    """Berry phases and solid angle per latitude.

    Columns are ``theta, gamma_plus, gamma_minus, omega_solid`` followed by
    ``chern_plus, chern_minus`` when Chern numbers are requested; columns of
    unrequested observables are left out.
    """
    rows = []
    for theta in thetas:
        values = evaluate("two-level", {"theta": theta, "r": r, "samples": samples}, outputs, ctx)
        rows.append({"theta": float(theta), **{TWO_LEVEL_COLUMNS[k]: v for k, v in values.items()}})
    present = {name for row in rows for name in row}
    table = ResultTable(
        columns=["theta", *(c for c in TWO_LEVEL_COLUMNS.values() if c in present)]
    )
    for row in rows:
        table.append(row)
    return table


def load_floquet_model(path: Path) -> FloquetModelFile:
    """Read a declarative periodic Hamiltonian from YAML or JSON."""
    return load_spec_file(path, FloquetModelFile)


def floquet_spectrum_table(
    model: FloquetModelFile, settings: MonopoleSettings, lam: float | None = None
) -> ResultTable:
    """Quasienergies and both geometric phases of every physical Floquet state."""
    h = model.to_hamiltonian(lam)
    config = settings.floquet
    spectrum = quasienergies(h, config.cutoff, config.samples)
    table = ResultTable(columns=["state", "quasienergy", "unfolded", "gamma_direct", "gamma_hf"])
    for index in range(spectrum.size):
        direct = geometric_phase_direct(spectrum.mode(index))
        hf = geometric_phase_hf(
            h,
            index,
            config.cutoff,
            relative_step=config.omega_step,
            overlap_threshold=config.branch_overlap,
        )
        table.append(
            {
                "state": index,
                "quasienergy": float(spectrum.folded[index]),
                "unfolded": float(spectrum.unfolded[index]),
                "gamma_direct": float(wrap_phase(direct.raw)),
                "gamma_hf": float(wrap_phase(hf)),
            }
        )
    logger.info("Floquet spectrum of %d states at cutoff %d", spectrum.size, config.cutoff)
    return table


def orbit_trajectory_table(p: OrbitParams, every: int = 100) -> ResultTable:
    """Every ``every``-th step of the orbit.

    Each row carries the relative drift |J − J0|/|J0| and the offset of |r| from
    the closed-form orbit at the same cone azimuth.
    """
    orbit = run_orbit(p)
    radius_residuals = analytic_residuals(orbit)
    j = orbit.angular_momenta()
    j0 = j[int(np.argmin(np.abs(orbit.times)))]
    norm = float(np.linalg.norm(j0))
    drift = np.linalg.norm(j - j0, axis=1) / norm if norm > 0 else np.zeros(len(orbit))

    table = ResultTable(
        columns=["t", "x", "y", "z", "vx", "vy", "vz", "r", "j_residual", "r_analytic_residual"]
    )
    indices = sorted({*range(0, len(orbit), max(1, every)), len(orbit) - 1})
    for i in indices:
        x, y, z = orbit.positions[i]
        vx, vy, vz = orbit.velocities[i]
        table.append(
            {
                "t": float(orbit.times[i]),
                "x": float(x),
                "y": float(y),
                "z": float(z),
                "vx": float(vx),
                "vy": float(vy),
                "vz": float(vz),
                "r": float(orbit.radii[i]),
                "j_residual": float(drift[i]),
                "r_analytic_residual": float(radius_residuals[i]),
            }
        )
    return table


def two_level_state_function(index: int, r: float = 1.0) -> StateFunction:
    """Eigenvector ``index`` of the two-level Hamiltonian on the sphere of radius r."""

    def h_fn(theta: float, phi: float) -> np.ndarray:
        point = (
            r * math.sin(theta) * math.cos(phi),
            r * math.sin(theta) * math.sin(phi),
            r * math.cos(theta),
        )
        return hamiltonian(TwoLevelParams.at(*point))

    return eigenstate_function(h_fn, index)


def _chern_states(
    model: ChernModel, j: float, beams: OamBeams
) -> list[tuple[str, StateFunction]]:
    if model == "two-level":
        return [(band_label(band), two_level_state_function(band.index)) for band in BANDS]
    if model == "spinj":
        return [
            (spin_label(float(m)), spin_state_function(j, float(m)))
            for m in spin_magnetic_numbers(j)
        ]
    names = ["dark"]
    if beams.l % 2 == 0:
        names += ["plus", "minus"]
    else:
        logger.warning("|±⟩ are not single-valued for odd l = %d; dark state only", beams.l)
    return [(name, lambda_state_function(beams, name)) for name in names]


def select_band(
    states: list[tuple[str, StateFunction]], band: str | None
) -> list[tuple[str, StateFunction]]:
    """Restrict ``states`` to one band, given by label or by position.

    Raises:
        BadArgumentError: If ``band`` names no state.
    """
    if band is None:
        return states
    labels = [name for name, _ in states]
    if band in labels:
        return [states[labels.index(band)]]
    if band.lstrip("-").isdigit() and 0 <= int(band) < len(states):
        return [states[int(band)]]
    raise BadArgumentError(
        f"Unknown band {band!r}; choose from {', '.join(labels)} or 0..{len(states) - 1}"
    )


def chern_table(
    model: ChernModel,
    settings: MonopoleSettings,
    *,
    band: str | None = None,
    j: float = 1.0,
    beams: OamBeams | None = None,
) -> ResultTable:
    """Sphere flux and Chern number of one band, or of every band of a model."""
    if model not in CHERN_MODELS:
        raise BadArgumentError(f"Unknown model {model!r}; choose from {', '.join(CHERN_MODELS)}")
    grid = settings.chern.grid()
    table = ResultTable(columns=["band", "flux", "chern", "integer_residual"])
    for name, state_fn in select_band(_chern_states(model, j, beams or OamBeams()), band):
        result = chern_number(state_fn, grid)
        table.append({"band": name, **result.as_dict()})
    return table


def lambda_table(
    beams: OamBeams, thetas: Sequence[float], settings: MonopoleSettings
) -> tuple[ResultTable, dict[str, Any]]:
    """Cap fluxes and connections of the Λ-system triplet over a θ grid.

    Each row holds the flux 2π·Qᵢᵢ(1 − cosθ) through the cap bounded by latitude
    θ and the dφ coefficient of each connection there.

    Returns:
        The θ table and metadata with the charge matrix, whole-sphere fluxes,
        Chern numbers and named quantization verdicts.
    """
    tolerances = settings.effective_tolerances()
    q = charge_matrix_oam(beams)
    charges = [float(d) for d in q.diag]
    analytic = triplet_charge_fluxes(q)
    numerical = charge_fluxes(charges, settings.chern.grid())
    cherns = {
        name: chern_number(state_fn, settings.chern.grid())
        for name, state_fn in _chern_states("lambda", 0.0, beams)
    }

    table = ResultTable(
        columns=[
            "theta",
            *(f"flux_{name}" for name in TRIPLET),
            *(f"connection_{name}" for name in TRIPLET),
        ]
    )
    for theta in thetas:
        connection = oam_connection_coefficients(beams, theta)
        row: dict[str, Any] = {"theta": float(theta)}
        for name, charge in zip(TRIPLET, charges, strict=True):
            row[f"flux_{name}"] = TWO_PI * charge * (1 - math.cos(theta))
            row[f"connection_{name}"] = connection[name]
        table.append(row)

    sphere: dict[str, dict[str, float | None]] = {}
    for i, name in enumerate(TRIPLET):
        result = cherns.get(name)
        sphere[name] = {
            "analytic": float(analytic[i]),
            "numerical": float(numerical[i]),
            "chern": None if result is None else result.chern,
            "integer_residual": None if result is None else result.integer_residual,
        }

    decomposition = spin_hypercharge_decomposition(q)
    flux_residual = float(np.max(np.abs(numerical - analytic)))
    verdicts = {
        "traceless": q.trace == 0,
        "flux_matches_charge": flux_residual <= tolerances.charge_flux,
        "chern_integer": all(
            r.integer_residual <= tolerances.chern_integer for r in cherns.values()
        ),
        "chern_matches_charge": all(
            r.integer == round(2 * q.diag[TRIPLET.index(name)]) for name, r in cherns.items()
        ),
        "quantized_su3": is_quantized(q, "SU"),
        "quantized_su3_z3": is_quantized(q, "SU/Z"),
    }
    metadata = {
        "l": beams.l,
        "l_p": beams.l_p,
        "l_c": beams.l_c,
        "charge": dict(zip(TRIPLET, q.as_strings(), strict=True)),
        "spin": str(decomposition.spin),
        "hypercharge": decomposition.hypercharge,
        "sphere_flux": sphere,
        "verdicts": verdicts,
    }
    return table, metadata
