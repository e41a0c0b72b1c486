"""Thermal entanglement and teleportation for a driven two-qubit XYZ model."""

from ._core import *  # noqa: F401,F403
