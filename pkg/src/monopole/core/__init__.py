"""Numerical core: kernels, geometry, and the physical models."""
