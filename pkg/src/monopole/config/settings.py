"""Settings management with YAML file and environment variable support."""

from pathlib import Path
from typing import Any

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from monopole.errors import BadArgumentError
from monopole.models.config import ChernConfig, FloquetConfig, OutputConfig, ToleranceConfig

# Default config file names to search for
DEFAULT_CONFIG_FILES = ["monopole.yaml", "monopole.yml"]


class MonopoleSettings(BaseSettings):
    """Application settings with environment variable and YAML file support.

    Configuration priority (highest to lowest):
    1. Configuration file (monopole.yaml)
    2. CLI arguments
    3. Environment variables (MONOPOLE_*)
    4. Default values
    """

    model_config = SettingsConfigDict(
        env_prefix="MONOPOLE_",
        env_nested_delimiter="__",
        extra="ignore",
    )

    verbose: bool = Field(default=False)
    tol_scale: float = Field(default=1.0, gt=0, description="Factor applied to every threshold")

    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    floquet: FloquetConfig = Field(default_factory=FloquetConfig)
    chern: ChernConfig = Field(default_factory=ChernConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    # Internal: path to loaded config file (not from config)
    _config_path: Path | None = None

    @property
    def config_path(self) -> Path | None:
        return self._config_path

    def effective_tolerances(self) -> ToleranceConfig:
        """Thresholds after applying ``tol_scale``."""
        return self.tolerances.scaled(self.tol_scale)


def _load_yaml_file(path: Path) -> dict[str, Any]:
    """Load and parse a YAML configuration file.

    Raises:
        BadArgumentError: If the file is not valid YAML or not a mapping.
    """
    if not path.exists():
        return {}

    try:
        with path.open(encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise BadArgumentError(f"Cannot parse {path}: {e}") from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise BadArgumentError(f"{path} must contain a mapping at the top level")
    return data


def _find_config_file(config_path: Path | None = None) -> Path | None:
    """Find the configuration file to use.

    Args:
        config_path: Explicit path to config file, or None to search.

    Returns:
        Path to config file if found, None otherwise.

    Raises:
        BadArgumentError: If an explicit path does not exist.
    """
    if config_path is not None:
        path = Path(config_path).resolve()
        if not path.exists():
            raise BadArgumentError(f"Config file not found: {config_path}")
        return path

    # Search for default config files in current directory
    cwd = Path.cwd()
    for filename in DEFAULT_CONFIG_FILES:
        path = cwd / filename
        if path.exists():
            return path

    return None


def _drop_none(values: dict[str, Any]) -> dict[str, Any]:
    cleaned: dict[str, Any] = {}
    for key, value in values.items():
        if isinstance(value, dict):
            nested = _drop_none(value)
            if nested:
                cleaned[key] = nested
        elif value is not None:
            cleaned[key] = value
    return cleaned


def _deep_merge(base: dict[str, Any], top: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in top.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_settings(
    config_path: Path | str | None = None,
    **overrides: Any,
) -> MonopoleSettings:
    """Load settings from YAML file and environment variables.

    Args:
        config_path: Path to configuration file, or None to search for default.
        **overrides: Settings from CLI flags; nested sections are dicts.

    Returns:
        Configured MonopoleSettings instance.

    Raises:
        BadArgumentError: If an explicit config file is missing or unreadable.
        pydantic.ValidationError: If a value is out of range.
    """
    if config_path is not None:
        config_path = Path(config_path)

    found_path = _find_config_file(config_path)
    yaml_config = _load_yaml_file(found_path) if found_path else {}

    # The file wins over flags; both win over environment variables,
    # which pydantic-settings applies below init values.
    merged_config = _deep_merge(_drop_none(overrides), yaml_config)

    settings = MonopoleSettings(**merged_config)
    settings._config_path = found_path

    return settings


def generate_default_config() -> str:
    """Generate a default configuration file content.

    Returns:
        YAML string with default configuration.
    """
    tolerances = "\n".join(
        f"  {name}: {value:.1e}" for name, value in ToleranceConfig().model_dump().items()
    )
    return f"""# monopole configuration
# Values here take precedence over command-line flags.

# Multiply every acceptance threshold (0.01 tightens by 100x)
tol_scale: 1.0

floquet:
  cutoff: 4          # harmonic cutoff P, extended space has 2P+1 blocks
  samples: 512       # samples per period for direct geometric phases
  omega_step: 1.0e-5 # relative step for d/d(omega)
  branch_overlap: 0.9

chern:
  n_theta: 100
  n_phi: 200
  theta_cap: 1.0e-3

output:
  format: csv        # csv or json
  workers: 1         # concurrent sweep evaluations

tolerances:
{tolerances}
"""
