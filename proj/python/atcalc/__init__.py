"""Exact calculator for J+ filtered sutured complexes."""

from ._core import Complex, Diagram, glue, run

__all__ = ["Complex", "Diagram", "glue", "run"]
