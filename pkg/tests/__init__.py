"""Tests for monopole."""
