"""CLI interface for monopole."""

import math
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Annotated, Any

import numpy as np
import scipy
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from monopole import __version__
from monopole.config.log import configure_logging
from monopole.config.settings import MonopoleSettings, generate_default_config, load_settings
from monopole.errors import BadArgumentError, InputError, NumericalError
from monopole.models.config import MODEL_OBSERVABLES
from monopole.models.params import OamBeams, OrbitParams
from monopole.services.output import ResultTable, render, write_table
from monopole.services.sweep_service import (
    EXIT_INPUT,
    EXIT_NUMERICAL,
    SpecFileError,
    SweepService,
    format_validation_error,
    load_sweep_spec,
)
from monopole.services.tables import (
    chern_table,
    evaluation_context,
    floquet_spectrum_table,
    lambda_table,
    load_floquet_model,
    orbit_trajectory_table,
    point_table,
    two_level_table,
)
from monopole.services.verify_service import GROUPS, VerifyReport, VerifyService

app = typer.Typer(
    name="monopole",
    help="Berry phases, monopole charges and Floquet geometric phases.",
    rich_markup_mode="rich",
    no_args_is_help=True,
)

console = Console()
error_console = Console(stderr=True)

EXIT_VERIFY_FAILED = 1
DEFAULT_LATITUDES = (math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3)
TWO_LEVEL_DEFAULTS = ("gamma_direct", "solid_angle")


class OutputFormatChoice(str, Enum):
    csv = "csv"
    json = "json"


class ChernModelChoice(str, Enum):
    two_level = "two-level"
    spinj = "spinj"
    lambda_ = "lambda"


ConfigOption = Annotated[
    Path | None,
    typer.Option("--config", "-c", help="Path to configuration file"),
]
OutOption = Annotated[
    Path | None,
    typer.Option("--out", "-o", help="Write results to this file instead of stdout"),
]
FormatOption = Annotated[
    OutputFormatChoice | None,
    typer.Option("--format", "-f", help="Output format"),
]
ObservableOption = Annotated[
    list[str] | None,
    typer.Option("--observable", help="Observable to report (repeatable); default all"),
]
CutoffOption = Annotated[
    int | None,
    typer.Option("--cutoff", "-P", help="Floquet harmonic cutoff"),
]


def _print_error(message: str) -> None:
    """Print an error message to stderr."""
    error_console.print(f"[bold red]Error:[/bold red] {escape(message)}")


def _print_success(message: str) -> None:
    """Print a success message."""
    console.print(f"[bold green]✓[/bold green] {escape(message)}")


def _print_warning(message: str) -> None:
    """Print a warning message to stderr, keeping stdout for data."""
    error_console.print(f"[bold yellow]![/bold yellow] {escape(message)}")


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map rejected inputs to exit code 2 and numerical failures to exit code 3."""
    try:
        yield
    except SpecFileError as e:
        _print_error(str(e))
        for line in e.diagnostics:
            error_console.print(f"  {line}", markup=False)
        raise typer.Exit(EXIT_INPUT) from None
    except ValidationError as e:
        _print_error(f"Invalid {e.title}")
        for line in format_validation_error(e):
            error_console.print(f"  {line}", markup=False)
        raise typer.Exit(EXIT_INPUT) from None
    except InputError as e:
        _print_error(str(e))
        raise typer.Exit(EXIT_INPUT) from None
    except NumericalError as e:
        _print_error(f"Numerical failure: {e}")
        raise typer.Exit(EXIT_NUMERICAL) from None


def _load(
    config: Path | None,
    fmt: OutputFormatChoice | None = None,
    **overrides: Any,
) -> MonopoleSettings:
    output = dict(overrides.pop("output", {}))
    if fmt is not None:
        output["format"] = fmt.value
    return load_settings(config, output=output, **overrides)


def _observables(model: str, requested: list[str] | None) -> list[str]:
    allowed = MODEL_OBSERVABLES[model]
    if not requested:
        return list(allowed)
    unknown = [name for name in requested if name not in allowed]
    if unknown:
        raise BadArgumentError(
            f"Model {model!r} does not report {', '.join(unknown)}; "
            f"choose from {', '.join(allowed)}"
        )
    return requested


def _complex(text: str, name: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise BadArgumentError(
            f"{name} must be a complex number like 0.8+0.3j, got {text!r}"
        ) from None


def _emit(
    table: ResultTable,
    settings: MonopoleSettings,
    out: Path | None,
    command: str,
    metadata: dict[str, Any] | None = None,
    fmt: str | None = None,
) -> None:
    """Write a table to ``out`` or print it to stdout."""
    fmt = fmt or settings.output.format
    if out is None:
        typer.echo(render(table, fmt, command, metadata), nl=False)
        return
    path = write_table(table, out, fmt, command, metadata)
    _print_success(f"Wrote {len(table.rows)} rows to {path}")


@app.callback()
def main(
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Log numerical diagnostics to stderr"),
    ] = False,
) -> None:
    """Berry phases, monopole charges and Floquet geometric phases."""
    configure_logging(verbose)


@app.command("two-level")
def two_level(
    theta: Annotated[
        list[float] | None,
        typer.Option("--theta", help="Contour latitude θ in radians (repeatable)"),
    ] = None,
    r: Annotated[float, typer.Option("--r", help="Sphere radius |R|")] = 1.0,
    samples: Annotated[int, typer.Option("--samples", help="Contour samples")] = 10_000,
    observable: ObservableOption = None,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Berry phases, solid angles and Chern numbers of the two-level monopole."""
    with _exit_codes():
        settings = _load(config, fmt)
        outputs = _observables("two-level", observable or list(TWO_LEVEL_DEFAULTS))
        table = two_level_table(
            theta or DEFAULT_LATITUDES, r, samples, outputs, evaluation_context(settings)
        )
        _emit(table, settings, out, "two-level", {"r": r, "samples": samples})


@app.command()
def orbit(
    b: Annotated[float, typer.Option("--b", help="Perihelion distance")] = 1.0,
    v: Annotated[float, typer.Option("--v", help="Speed")] = 1.0,
    mu: Annotated[float, typer.Option("--mu", help="Coupling μ = eq")] = 0.5,
    m: Annotated[float, typer.Option("--m", help="Mass")] = 1.0,
    t_max: Annotated[
        float, typer.Option("--t-max", help="Integrate over [−t_max, t_max]")
    ] = 10.0,
    dt: Annotated[float | None, typer.Option("--dt", help="RK4 step; default 1e-3·b/v")] = None,
    every: Annotated[int, typer.Option("--every", help="Keep every N-th step")] = 100,
    summary: Annotated[
        bool,
        typer.Option("--summary", "-s", help="Report conservation residuals only"),
    ] = False,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Trajectory of a charged particle around a magnetic monopole."""
    with _exit_codes():
        settings = _load(config, fmt)
        params = OrbitParams(b=b, v=v, mu=mu, m=m, t_max=t_max, dt=dt)
        if summary:
            point = params.model_dump(exclude_none=True)
            table = point_table("orbit", [point], ["orbit"], evaluation_context(settings))
        else:
            table = orbit_trajectory_table(params, every)
        _emit(table, settings, out, "orbit")


@app.command()
def floquet(
    model_file: Annotated[
        Path,
        typer.Argument(help="YAML or JSON file with the Fourier blocks of H(t)"),
    ],
    lam: Annotated[
        float | None,
        typer.Option("--lambda", help="Override the perturbation strength λ"),
    ] = None,
    cutoff: CutoffOption = None,
    samples: Annotated[int | None, typer.Option("--samples", help="ϑ samples per mode")] = None,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Quasienergies and geometric phases of a periodic Hamiltonian file."""
    with _exit_codes():
        settings = _load(config, fmt, floquet={"cutoff": cutoff, "samples": samples})
        model = load_floquet_model(model_file)
        table = floquet_spectrum_table(model, settings, lam)
        metadata = {
            "dimension": model.dimension,
            "omega": model.omega,
            "cutoff": settings.floquet.cutoff,
        }
        _emit(table, settings, out, "floquet", metadata)


@app.command()
def rwa(
    delta: Annotated[
        list[float] | None,
        typer.Option("--delta", help="Detuning δ = E₁ − E₂ − ω (repeatable)"),
    ] = None,
    lam: Annotated[float, typer.Option("--lambda", help="Perturbation strength λ")] = 1.0,
    v0: Annotated[str, typer.Option("--v0", help="Complex drive amplitude V₀")] = "1",
    e1: Annotated[float, typer.Option("--e1", help="Level energy E₁")] = 2.5,
    e2: Annotated[float, typer.Option("--e2", help="Level energy E₂")] = -2.5,
    observable: ObservableOption = None,
    cutoff: CutoffOption = None,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Rotating-wave driven qubit: quasienergies, phases and susceptibility."""
    with _exit_codes():
        settings = _load(config, fmt, floquet={"cutoff": cutoff})
        amplitude = _complex(v0, "--v0")
        points = [
            {"delta": d, "lambda": lam, "V0": amplitude, "E1": e1, "E2": e2}
            for d in delta or [0.0]
        ]
        outputs = _observables("rwa", observable)
        table = point_table("rwa", points, outputs, evaluation_context(settings))
        _emit(table, settings, out, "rwa")


@app.command()
def jaynes(
    omega_r: Annotated[
        list[float] | None,
        typer.Option("--omega-r", help="Resonator frequency (repeatable)"),
    ] = None,
    omega_q: Annotated[float, typer.Option("--omega-q", help="Qubit frequency")] = 1.0,
    lam: Annotated[float, typer.Option("--lambda", help="Qubit-resonator coupling λ")] = 0.1,
    n: Annotated[int, typer.Option("--n", help="Photon number")] = 0,
    alpha: Annotated[float, typer.Option("--alpha", help="Coherent amplitude α")] = 10.0,
    observable: ObservableOption = None,
    cutoff: CutoffOption = None,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Qubit coupled to a resonator: closed form and semiclassical Floquet phases."""
    with _exit_codes():
        settings = _load(config, fmt, floquet={"cutoff": cutoff})
        points = [
            {"omega_q": omega_q, "omega_r": w, "lambda": lam, "n": n, "alpha": alpha}
            for w in omega_r or [omega_q]
        ]
        outputs = _observables("jaynes", observable)
        table = point_table("jaynes", points, outputs, evaluation_context(settings))
        _emit(table, settings, out, "jaynes")


@app.command()
def spinj(
    j: Annotated[
        list[float] | None,
        typer.Option("--j", help="Spin quantum number (repeatable)"),
    ] = None,
    omega0: Annotated[float, typer.Option("--omega0", help="Static precession ω₀")] = 1.0,
    v: Annotated[str, typer.Option("--v", help="Complex transverse drive V")] = "0.5",
    omega: Annotated[float, typer.Option("--omega", help="Drive frequency ω")] = 0.8,
    observable: ObservableOption = None,
    cutoff: CutoffOption = None,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Spin j in a rotating field: quasienergies, phases and Chern numbers."""
    with _exit_codes():
        settings = _load(config, fmt, floquet={"cutoff": cutoff})
        drive = _complex(v, "--v")
        points = [{"j": spin, "omega0": omega0, "V": drive, "omega": omega} for spin in j or [0.5]]
        outputs = _observables("spinj", observable)
        table = point_table("spinj", points, outputs, evaluation_context(settings))
        _emit(table, settings, out, "spinj")


def _theta_grid(count: int) -> list[float]:
    """``count`` mixing angles evenly spaced over (0, π], ending at the south pole."""
    if count < 1:
        raise BadArgumentError(f"--theta-grid needs at least one angle, got {count}")
    return [math.pi * (k + 1) / count for k in range(count)]


@app.command("lambda")
def lambda_system(
    l_p: Annotated[int, typer.Option("--lp", help="Pump orbital angular momentum")] = 1,
    l_c: Annotated[int, typer.Option("--lc", help="Control orbital angular momentum")] = 0,
    theta_grid: Annotated[
        int,
        typer.Option("--theta-grid", help="Number of mixing angles θ in (0, π]"),
    ] = 8,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Λ-system triplet with OAM beams: charges, flux table and quantization verdicts.

    Writes JSON unless --format csv is given; CSV carries the θ table only.
    """
    with _exit_codes():
        settings = _load(config, fmt)
        beams = OamBeams(l_p=l_p, l_c=l_c)
        table, metadata = lambda_table(beams, _theta_grid(theta_grid), settings)
        _emit(table, settings, out, "lambda", metadata, fmt=fmt.value if fmt else "json")


@app.command()
def chern(
    model: Annotated[
        ChernModelChoice,
        typer.Option("--model", "-m", help="Model whose bands are integrated"),
    ] = ChernModelChoice.two_level,
    band: Annotated[
        str | None,
        typer.Option("--band", "-b", help="Band label (plus, m+1, dark) or index; default all"),
    ] = None,
    j: Annotated[float, typer.Option("--j", help="Spin for --model spinj")] = 1.0,
    l_p: Annotated[int, typer.Option("--lp", help="Pump OAM for --model lambda")] = 1,
    l_c: Annotated[int, typer.Option("--lc", help="Control OAM for --model lambda")] = 0,
    n_theta: Annotated[int | None, typer.Option("--n-theta", help="Polar grid cells")] = None,
    n_phi: Annotated[int | None, typer.Option("--n-phi", help="Azimuthal grid cells")] = None,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Link-variable sphere flux and Chern number of a band.

    Writes one JSON row {band, flux, chern, integer_residual} per band unless
    --format csv is given.
    """
    with _exit_codes():
        settings = _load(config, fmt, chern={"n_theta": n_theta, "n_phi": n_phi})
        table = chern_table(
            model.value, settings, band=band, j=j, beams=OamBeams(l_p=l_p, l_c=l_c)
        )
        grid = settings.chern
        metadata = {"model": model.value, "n_theta": grid.n_theta, "n_phi": grid.n_phi}
        _emit(table, settings, out, "chern", metadata, fmt=fmt.value if fmt else "json")


@app.command()
def sweep(
    spec_file: Annotated[
        Path,
        typer.Argument(help="YAML or JSON sweep specification"),
    ],
    workers: Annotated[
        int | None,
        typer.Option("--workers", "-w", help="Concurrent point evaluations"),
    ] = None,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Evaluate observables of one model over a parameter grid.

    Failed points keep their row with a status column naming the error; the
    exit code is 3 if any point failed numerically and 2 if any was rejected.
    """
    with _exit_codes():
        settings = _load(config, None, output={"workers": workers})
        spec = load_sweep_spec(spec_file)
        result = SweepService(settings).run(spec)
        metadata = {"model": spec.model, "outputs": spec.outputs}
        fmt_value = fmt.value if fmt is not None else spec.format
        _emit(result.table, settings, out, "sweep", metadata, fmt=fmt_value)

    if result.failures:
        _print_warning(f"{len(result.failures)} of {len(result.outcomes)} points failed")
        raise typer.Exit(result.exit_code)


def _report_table(report: VerifyReport) -> ResultTable:
    table = ResultTable(columns=["group", "check", "residual", "tolerance", "seconds", "status"])
    for r in report.results:
        table.append(
            {
                "group": r.group,
                "check": r.name,
                "residual": r.residual if math.isfinite(r.residual) else None,
                "tolerance": r.tolerance,
                "seconds": round(r.seconds, 3),
                "status": "pass" if r.passed else r.error or "fail",
            }
        )
    return table


@app.command()
def verify(
    only: Annotated[
        list[str] | None,
        typer.Option("--only", help=f"Check group to run (repeatable): {', '.join(GROUPS)}"),
    ] = None,
    tol_scale: Annotated[
        float | None,
        typer.Option("--tol-scale", help="Multiply every tolerance (0.01 tightens 100x)"),
    ] = None,
    config: ConfigOption = None,
    out: OutOption = None,
    fmt: FormatOption = None,
) -> None:
    """Run the acceptance checks and report measured residuals."""
    with _exit_codes():
        settings = _load(config, fmt, tol_scale=tol_scale)
        report = VerifyService(settings).run(only)

    table = Table(title="Verification", show_header=True)
    table.add_column("Group", style="cyan")
    table.add_column("Check")
    table.add_column("Residual", justify="right")
    table.add_column("Tolerance", justify="right", style="dim")
    table.add_column("Time", justify="right", style="dim")
    table.add_column("Status")
    for r in report.results:
        if r.passed:
            status = "[green]pass[/green]"
        else:
            status = f"[red]{escape(r.error or 'fail')}[/red]"
        residual = f"{r.residual:.2e}" if math.isfinite(r.residual) else "-"
        table.add_row(r.group, r.name, residual, f"{r.tolerance:.1e}", f"{r.seconds:.2f}s", status)
    console.print(table)

    if out is not None:
        path = write_table(_report_table(report), out, settings.output.format, "verify")
        console.print(f"[dim]Report written to {path}[/dim]")

    if not report.passed:
        _print_error(f"{len(report.failures)} of {len(report.results)} checks failed")
        raise typer.Exit(EXIT_VERIFY_FAILED)
    _print_success(f"All {len(report.results)} checks passed in {report.seconds:.1f}s")


@app.command()
def init(
    path: Annotated[
        Path,
        typer.Argument(help="Path for configuration file"),
    ] = Path("monopole.yaml"),
    force: Annotated[
        bool,
        typer.Option("--force", "-f", help="Overwrite existing file"),
    ] = False,
) -> None:
    """Create a new configuration file."""
    if path.exists() and not force:
        _print_error(f"File already exists: {path}\nUse --force to overwrite.")
        raise typer.Exit(1)

    path.write_text(generate_default_config(), encoding="utf-8")
    _print_success(f"Created configuration file: {path}")


@app.command()
def version() -> None:
    """Show version information."""
    console.print(f"monopole [bold]{__version__}[/bold]")
    console.print(f"numpy    [bold]{np.__version__}[/bold]")
    console.print(f"scipy    [bold]{scipy.__version__}[/bold]")
    console.print(f"Python   [bold]{sys.version.split()[0]}[/bold]")


if __name__ == "__main__":
    app()
