"""Configuration loading for monopole."""

from monopole.config.log import configure_logging
from monopole.config.settings import MonopoleSettings, generate_default_config, load_settings

__all__ = [
    "MonopoleSettings",
    "configure_logging",
    "generate_default_config",
    "load_settings",
]
