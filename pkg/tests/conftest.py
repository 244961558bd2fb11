"""Shared test fixtures for monopole tests."""

import tempfile
from collections.abc import Generator
from pathlib import Path

import numpy as np
import pytest

from monopole.config.settings import MonopoleSettings
from monopole.core.chern import SphereGrid
from monopole.models.config import ChernConfig, FloquetConfig
from monopole.models.params import RwaQubitParams, SpinJParams
from monopole.services.observables import EvaluationContext


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so random draws are reproducible."""
    return np.random.default_rng(1729)


@pytest.fixture
def coarse_grid() -> SphereGrid:
    """Smallest accepted Chern grid, fine enough for smooth state families."""
    return SphereGrid(n_theta=32, n_phi=64)


@pytest.fixture
def fast_settings() -> MonopoleSettings:
    """Settings with a coarse Chern grid to keep table tests quick."""
    return MonopoleSettings(chern=ChernConfig(n_theta=32, n_phi=64))


@pytest.fixture
def fast_context() -> EvaluationContext:
    """Evaluation context with a coarse Chern grid and short contours."""
    return EvaluationContext(
        floquet=FloquetConfig(),
        chern=ChernConfig(n_theta=32, n_phi=64),
        contour_samples=2_000,
    )


@pytest.fixture
def rwa_params() -> RwaQubitParams:
    """Off-resonant RWA qubit with a complex drive."""
    return RwaQubitParams.from_detuning(0.7, **{"lambda": 0.8, "V0": 0.9 + 0.4j})


@pytest.fixture
def spin_params() -> SpinJParams:
    """Spin-1 drive away from its diabolical point."""
    return SpinJParams(j=1.0, omega0=1.0, V=0.5 + 0.2j, omega=0.8)


@pytest.fixture
def temp_dir() -> Generator[Path]:
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def temp_config_file(temp_dir: Path) -> Path:
    """Create a temporary config file."""
    config_file = temp_dir / "monopole.yaml"
    config_file.write_text(
        """
tol_scale: 2.0

floquet:
  cutoff: 6

chern:
  n_theta: 40
  n_phi: 80

output:
  format: json
"""
    )
    return config_file


@pytest.fixture
def sweep_file(temp_dir: Path) -> Path:
    """A small two-level sweep over the contour latitude."""
    spec = temp_dir / "sweep.yaml"
    spec.write_text(
        """
model: two-level
parameter: theta
range: [0.5, 2.5, 3]
outputs: [solid_angle, gamma_direct]
fixed:
  r: 1.0
  samples: 2000
"""
    )
    return spec


@pytest.fixture
def floquet_model_file(temp_dir: Path) -> Path:
    """RWA qubit written as a declarative Fourier-block file."""
    model = temp_dir / "rwa.yaml"
    model.write_text(
        """
dimension: 2
omega: 4.3
lambda: 1.0
blocks:
  0:
    real: [[2.5, 0.0], [0.0, -2.5]]
  1:
    real: [[0.0, 0.0], [0.5, 0.0]]
"""
    )
    return model
