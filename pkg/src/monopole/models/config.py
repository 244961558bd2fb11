"""Pydantic models for monopole configuration, sweeps and model files."""

from typing import Annotated, Any, Literal, Self

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from monopole.core.chern import SphereGrid
from monopole.core.floquet import PeriodicHamiltonian

OutputFormat = Literal["csv", "json"]

OBSERVABLES = (
    "quasienergy",
    "gamma_direct",
    "gamma_hf",
    "chi",
    "spin_projection",
    "chern",
    "solid_angle",
    "orbit",
)

# Parameters each model can sweep, and the observables it can report.
MODEL_PARAMETERS: dict[str, tuple[str, ...]] = {
    "two-level": ("theta", "r"),
    "orbit": ("mu", "b", "v", "m"),
    "rwa": ("delta", "lambda", "V0", "E1", "E2", "omega"),
    "jaynes": ("omega_q", "omega_r", "lambda", "n", "alpha"),
    "spinj": ("omega0", "V", "omega"),
    "lambda": ("l_p", "l_c"),
}
MODEL_OBSERVABLES: dict[str, tuple[str, ...]] = {
    "two-level": ("solid_angle", "gamma_direct", "chern"),
    "orbit": ("orbit",),
    "rwa": ("quasienergy", "gamma_direct", "gamma_hf", "chi", "spin_projection"),
    "jaynes": ("quasienergy", "gamma_direct", "gamma_hf", "spin_projection"),
    "spinj": ("quasienergy", "gamma_direct", "gamma_hf", "spin_projection", "chern"),
    "lambda": ("chern",),
}


class ToleranceConfig(BaseModel):
    """Acceptance thresholds of every verification check."""

    holonomy: float = Field(default=1e-6, gt=0, description="Two-level Berry phase vs solid angle")
    chern_integer: float = Field(default=1e-9, gt=0, description="Chern integer residual")
    floquet_identity: float = Field(default=1e-5, gt=0, description="γ_direct vs −2π dε/dω")
    quasienergy: float = Field(default=1e-10, gt=0, description="Floquet vs closed form")
    susceptibility: float = Field(default=1e-6, gt=0, description="χ vs closed form")
    spin_projection: float = Field(default=1e-8, gt=0, description="⟨S·R̂⟩ residual")
    semiclassical: float = Field(default=1e-5, gt=0, description="Semiclassical phases")
    berry_limit: float = Field(default=2e-2, gt=0, description="Adiabatic limit, relative")
    spin_j: float = Field(default=1e-9, gt=0, description="Spin-j spectra and phases")
    commutator: float = Field(default=1e-12, gt=0, description="Angular momentum algebra")
    center_element: float = Field(default=1e-12, gt=0, description="exp(i4πQ) residual")
    charge_flux: float = Field(default=1e-8, gt=0, description="Sphere flux per component")
    connection: float = Field(default=1e-8, gt=0, description="Λ-system connections")
    orbit_conservation: float = Field(default=1e-8, gt=0, description="J drift and cone")
    orbit_radius: float = Field(default=1e-6, gt=0, description="r(t) vs √(v²t²+b²)")
    time_reversal: float = Field(default=1e-8, gt=0, description="Forward-backward closure")
    string_relation: float = Field(default=1e-10, gt=0, description="Schwinger vs Dirac")
    curl: float = Field(default=1e-6, gt=0, description="Numerical curl vs qR/r³")
    eigensolver: float = Field(default=1e-10, gt=0, description="Eigen-decomposition residuals")
    geometry: float = Field(default=1e-10, gt=0, description="Solid-angle symmetries")
    orthonormality: float = Field(default=1e-8, gt=0, description="Extended-space mode overlaps")

    def scaled(self, factor: float) -> Self:
        """Copy with every threshold multiplied by ``factor``."""
        if factor <= 0:
            raise ValueError(f"Tolerance scale must be positive, got {factor}")
        return self.model_copy(update={name: value * factor for name, value in self})


class FloquetConfig(BaseModel):
    """Floquet engine knobs."""

    cutoff: int = Field(default=4, ge=1, description="Harmonic cutoff P")
    samples: int = Field(default=512, ge=256, description="ϑ samples M per mode")
    omega_step: float = Field(default=1e-5, gt=0, lt=1e-2, description="Relative ω step")
    branch_overlap: float = Field(default=0.9, gt=0, le=1, description="Branch tracking threshold")


class ChernConfig(BaseModel):
    """Sphere grid for link-variable Chern numbers."""

    n_theta: int = Field(default=100, ge=32)
    n_phi: int = Field(default=200, ge=64)
    theta_cap: float = Field(default=1e-3, gt=0, lt=0.5)

    def grid(self) -> SphereGrid:
        return SphereGrid(self.n_theta, self.n_phi, self.theta_cap)


class OutputConfig(BaseModel):
    """Output format and sweep concurrency."""

    format: OutputFormat = Field(default="csv")
    workers: int = Field(default=1, ge=1, le=256, description="Concurrent sweep evaluations")


class SweepAxis(BaseModel):
    """One swept parameter: ``count`` evenly spaced values from start to stop."""

    parameter: str
    start: float
    stop: float
    count: int = Field(..., ge=2)

    def values(self) -> list[float]:
        return [float(x) for x in np.linspace(self.start, self.stop, self.count)]


class SweepSpec(BaseModel):
    """Declarative parameter sweep over one model."""

    model: str
    parameter: str
    range: tuple[float, float, int]
    outputs: Annotated[list[str], Field(min_length=1)]
    format: OutputFormat = "csv"
    extra_axes: list[SweepAxis] = Field(default_factory=list)
    fixed: dict[str, Any] = Field(default_factory=dict)

    @field_validator("model", mode="before")
    @classmethod
    def validate_model(cls, v: str) -> str:
        """Normalize and check the model name."""
        name = str(v).strip().lower().replace("_", "-")
        if name not in MODEL_PARAMETERS:
            raise ValueError(f"Unknown model {v!r}; expected one of {sorted(MODEL_PARAMETERS)}")
        return name

    @field_validator("range")
    @classmethod
    def validate_range(cls, v: tuple[float, float, int]) -> tuple[float, float, int]:
        """Require at least two points."""
        if v[2] < 2:
            raise ValueError(f"Sweep range needs count ≥ 2, got {v[2]}")
        return v

    @model_validator(mode="after")
    def validate_names(self) -> "SweepSpec":
        """Check parameters and observables against the model's registry."""
        allowed_parameters = MODEL_PARAMETERS[self.model]
        for parameter in [self.parameter, *(axis.parameter for axis in self.extra_axes)]:
            if parameter not in allowed_parameters:
                raise ValueError(
                    f"Model {self.model!r} cannot sweep {parameter!r}; "
                    f"expected one of {list(allowed_parameters)}"
                )
        allowed_outputs = MODEL_OBSERVABLES[self.model]
        for name in self.outputs:
            if name not in OBSERVABLES:
                raise ValueError(
                    f"Unknown observable {name!r}; expected one of {list(OBSERVABLES)}"
                )
            if name not in allowed_outputs:
                raise ValueError(f"Model {self.model!r} does not report {name!r}")
        return self

    @property
    def axes(self) -> list[SweepAxis]:
        start, stop, count = self.range
        primary = SweepAxis(parameter=self.parameter, start=start, stop=stop, count=count)
        return [*self.extra_axes, primary]

    def grid(self) -> list[dict[str, float]]:
        """Every sweep point in row-major order, the primary parameter varying fastest."""
        points: list[dict[str, float]] = [{}]
        for axis in self.axes:
            points = [
                {**point, axis.parameter: value} for point in points for value in axis.values()
            ]
        return points


class MatrixBlock(BaseModel):
    """Complex matrix given as nested real and optional imaginary parts."""

    real: list[list[float]]
    imag: list[list[float]] | None = None

    @model_validator(mode="after")
    def validate_shapes(self) -> "MatrixBlock":
        """Require square, consistently shaped parts."""
        rows = len(self.real)
        if rows == 0 or any(len(row) != rows for row in self.real):
            raise ValueError("Block must be a non-empty square matrix")
        if self.imag is not None and (
            len(self.imag) != rows or any(len(row) != rows for row in self.imag)
        ):
            raise ValueError("Imaginary part must match the real part's shape")
        return self

    def to_array(self) -> np.ndarray:
        matrix = np.asarray(self.real, dtype=complex)
        if self.imag is not None:
            matrix = matrix + 1j * np.asarray(self.imag, dtype=float)
        return matrix


class FloquetModelFile(BaseModel):
    """Declarative periodic Hamiltonian H(t) = H⁽⁰⁾ + λ Σ_{k≠0} H⁽ᵏ⁾ e^{ikωt}.

    Blocks for negative harmonics are optional; missing ones are filled with the
    Hermitian conjugate of the positive partner.
    """

    dimension: int = Field(..., ge=1)
    omega: float = Field(..., gt=0)
    lam: float = Field(default=1.0, alias="lambda")
    blocks: dict[int, MatrixBlock]

    model_config = {"populate_by_name": True}

    @model_validator(mode="after")
    def validate_blocks(self) -> "FloquetModelFile":
        """Check every block's dimension."""
        for k, block in self.blocks.items():
            if len(block.real) != self.dimension:
                size = len(block.real)
                raise ValueError(f"Block {k} is {size}×{size}, expected {self.dimension}")
        return self

    def to_hamiltonian(self, lam: float | None = None) -> PeriodicHamiltonian:
        strength = self.lam if lam is None else lam
        blocks = {
            k: block.to_array() if k == 0 else strength * block.to_array()
            for k, block in self.blocks.items()
        }
        for k in list(blocks):
            if k > 0 and -k not in blocks:
                blocks[-k] = blocks[k].conj().T
        return PeriodicHamiltonian(dim=self.dimension, blocks=blocks, omega=self.omega)
