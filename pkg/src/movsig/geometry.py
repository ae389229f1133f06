"""Uniform linear array geometry and far-field element distances."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class UlaGeometry:
    """Uniform linear array centred on the origin of the x-axis.

    Used both for the transmit array and for reflecting surfaces.
    """

    n_elements: int
    spacing: float  # meters

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise ValueError(f"n_elements must be a positive integer, got {self.n_elements}")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")


@dataclass(frozen=True)
class FarFieldLink:
    """Distance to the array centre and angle from the array normal (radians)."""

    distance: float
    angle: float

    def __post_init__(self):
        if not self.distance > 0:
            raise ValueError(f"distance must be positive, got {self.distance}")
        if abs(self.angle) > np.pi / 2:
            raise ValueError(f"angle must lie in [-pi/2, pi/2], got {self.angle}")


def element_indices(n_elements):
    """Centred element offsets ``n - (N+1)/2`` for ``n = 1..N``."""
    return np.arange(1, n_elements + 1) - (n_elements + 1) / 2


def element_positions(geom):
    """x-coordinates of the array elements, ascending and symmetric about 0."""
    return element_indices(geom.n_elements) * geom.spacing


def element_distance(link, x_n):
    """Far-field distance from an element at ``x_n`` to the far end of ``link``."""
    return link.distance - np.asarray(x_n) * np.sin(link.angle)
