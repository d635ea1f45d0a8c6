"""Exact solver and strategy checker for the Toucher-Isolator game on cycles and paths."""

__version__ = "0.1.0"
