"""Finite workbench for frames, nuclei, and Priestley/Esakia duality."""

__version__ = "0.1.0"
