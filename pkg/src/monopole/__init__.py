"""monopole - Berry phases, monopole charges and Floquet geometric phases."""

__version__ = "0.1.0"
