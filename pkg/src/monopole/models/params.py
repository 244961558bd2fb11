"""Pydantic parameter records for the driven and Λ-type models."""

import cmath
import math
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator


class _ParamsModel(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")


class RwaQubitParams(_ParamsModel):
    """Two-level system driven by e^{∓iωt} couplings in the rotating-wave form.

    ``lam`` is also accepted under its physics name ``lambda``.
    """

    E1: float = Field(default=2.5, description="Bare energy of level 1")
    E2: float = Field(default=-2.5, description="Bare energy of level 2")
    V0: complex = Field(default=1.0 + 0j, description="Complex drive amplitude")
    lam: float = Field(default=1.0, ge=0, alias="lambda", description="Perturbation strength λ")
    omega: float = Field(default=5.0, gt=0, description="Drive frequency ω")

    @classmethod
    def from_detuning(cls, delta: float, **values: object) -> Self:
        """Build parameters with ω chosen so that δ = E₁ − E₂ − ω."""
        base = cls.model_validate(values)
        return cls.model_validate({**base.model_dump(), "omega": base.omega0 - delta})

    @property
    def e0(self) -> float:
        return 0.5 * (self.E1 + self.E2)

    @property
    def omega0(self) -> float:
        return self.E1 - self.E2

    @property
    def delta(self) -> float:
        """Detuning δ = ω₀ − ω."""
        return self.omega0 - self.omega

    @property
    def coupling(self) -> complex:
        return self.lam * self.V0

    @property
    def rabi(self) -> float:
        """√(λ²|V₀|² + δ²)."""
        return math.hypot(abs(self.coupling), self.delta)

    @property
    def cos_theta(self) -> float:
        return self.delta / self.rabi


class QubitResonatorParams(_ParamsModel):
    """Qubit coupled to a resonator mode, n photons or a coherent amplitude α."""

    omega_q: float = Field(default=1.0, gt=0, description="Qubit frequency")
    omega_r: float = Field(default=1.0, gt=0, description="Resonator frequency")
    lam: float = Field(default=0.1, alias="lambda", description="Coupling λ")
    n: int = Field(default=0, ge=0, description="Photon index")
    alpha: float = Field(default=10.0, ge=0, description="Coherent amplitude α")

    @property
    def kappa(self) -> float:
        """Effective semiclassical coupling κ = αλ."""
        return self.alpha * self.lam

    @property
    def rabi_n(self) -> float:
        """Ωₙ = √((n+1)λ² + (ω_q − ω_r)²)."""
        return math.sqrt((self.n + 1) * self.lam**2 + (self.omega_q - self.omega_r) ** 2)

    @property
    def rabi_semiclassical(self) -> float:
        """Ω = √(κ² + (ω_q − ω_r)²)."""
        return math.hypot(self.kappa, self.omega_q - self.omega_r)


class SpinJParams(_ParamsModel):
    """Spin j in a static field along z plus a circularly polarized drive.

    ``omega0`` is μ₀B_z/j and ``V`` is μ₀B⊥e^{iφ}/j. Whether 2j is a positive
    integer is checked by the model builders.
    """

    j: float = Field(default=0.5, gt=0, description="Spin quantum number")
    omega0: float = Field(default=1.0, description="Static precession frequency ω₀")
    V: complex = Field(default=0.5 + 0j, description="Complex transverse drive")
    omega: float = Field(default=0.8, gt=0, description="Drive frequency ω")

    @property
    def dim(self) -> int:
        return round(2 * self.j) + 1

    @property
    def detuning(self) -> float:
        """Δ = ω₀ − ω."""
        return self.omega0 - self.omega

    @property
    def rabi(self) -> float:
        """Ω = √(Δ² + |V|²)."""
        return math.hypot(self.detuning, abs(self.V))

    @property
    def cos_theta(self) -> float:
        return self.detuning / self.rabi


class LambdaParams(_ParamsModel):
    """Λ-system couplings: Ω_p = X + iY, Ω_c = Z + iU and detuning δ.

    Chart: tan(θ/2) = |Ω_p|/|Ω_c|, φ = φ_p − φ_c, ψ = φ_p + φ_c.
    """

    omega_p: complex = Field(default=1.0 + 0j, description="Pump Rabi frequency Ω_p")
    omega_c: complex = Field(default=1.0 + 0j, description="Control Rabi frequency Ω_c")
    delta: float = Field(default=0.0, description="One-photon detuning δ")

    @classmethod
    def from_angles(
        cls, R: float, theta: float, phi_p: float, phi_c: float, delta: float = 0.0
    ) -> Self:
        return cls(
            omega_p=R * math.sin(theta / 2) * cmath.exp(1j * phi_p),
            omega_c=R * math.cos(theta / 2) * cmath.exp(1j * phi_c),
            delta=delta,
        )

    @property
    def R(self) -> float:
        return math.hypot(abs(self.omega_p), abs(self.omega_c))

    @property
    def theta(self) -> float:
        return 2.0 * math.atan2(abs(self.omega_p), abs(self.omega_c))

    @property
    def phi_p(self) -> float:
        return cmath.phase(self.omega_p)

    @property
    def phi_c(self) -> float:
        return cmath.phase(self.omega_c)

    @property
    def phi(self) -> float:
        return self.phi_p - self.phi_c

    @property
    def psi(self) -> float:
        return self.phi_p + self.phi_c


class OamBeams(_ParamsModel):
    """Orbital angular momenta of the pump and control beams."""

    l_p: int = Field(default=1, description="Pump orbital angular momentum")
    l_c: int = Field(default=0, description="Control orbital angular momentum")

    @property
    def l(self) -> int:  # noqa: E743
        """Relative winding number l = l_p − l_c."""
        return self.l_p - self.l_c


class OrbitParams(_ParamsModel):
    """Initial data for a monopole orbit started at perihelion."""

    b: float = Field(default=1.0, gt=0, description="Perihelion distance")
    v: float = Field(default=1.0, gt=0, description="Speed")
    mu: float = Field(default=0.5, description="Coupling μ = eq")
    m: float = Field(default=1.0, gt=0, description="Mass")
    t_max: float = Field(default=10.0, gt=0, description="Integrate over [−t_max, t_max]")
    dt: float | None = Field(default=None, gt=0, description="RK4 step; default 1e-3·b/v")

    @field_validator("dt", mode="before")
    @classmethod
    def empty_dt_is_default(cls, v: object) -> object:
        """Treat 0 or an empty string as 'use the default step'."""
        if v in ("", 0, 0.0):
            return None
        return v

    @property
    def step(self) -> float:
        return self.dt if self.dt is not None else 1e-3 * self.b / self.v
