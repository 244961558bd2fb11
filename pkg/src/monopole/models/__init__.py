"""Data models for monopole configuration and physical parameters."""

from monopole.models.config import (
    ChernConfig,
    FloquetConfig,
    FloquetModelFile,
    OutputConfig,
    SweepAxis,
    SweepSpec,
    ToleranceConfig,
)
from monopole.models.params import (
    LambdaParams,
    OamBeams,
    OrbitParams,
    QubitResonatorParams,
    RwaQubitParams,
    SpinJParams,
)

__all__ = [
    "ChernConfig",
    "FloquetConfig",
    "FloquetModelFile",
    "LambdaParams",
    "OamBeams",
    "OrbitParams",
    "OutputConfig",
    "QubitResonatorParams",
    "RwaQubitParams",
    "SpinJParams",
    "SweepAxis",
    "SweepSpec",
    "ToleranceConfig",
]
