"""Recoloring planar graphs with ten colours: motifs, reducible configurations,
discharging and constructive recolouring sequences."""

__version__ = "0.1.0"
