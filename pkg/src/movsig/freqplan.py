"""Optimal carrier frequencies and coverage of movable signals.

Angles are radians throughout. Coverage is computed for the frequency range
whose lower edge is pinned to the lowest optimal frequency of the geometry:
``f_min = f_A`` for LoS and ``f_min = f_A / (1 + |sin theta_T|)`` for a
surface-aided link.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .channel import SPEED_OF_LIGHT


@dataclass(frozen=True)
class FrequencyRange:
    f_min: float
    width_ratio: float

    def __post_init__(self):
        if not self.f_min > 0:
            raise ValueError(f"f_min must be positive, got {self.f_min}")
        if not self.width_ratio >= 1:
            raise ValueError(f"invalid range width: W={self.width_ratio} < 1")

    @property
    def f_max(self):
        return self.width_ratio * self.f_min


class OptimalFrequency(NamedTuple):
    """Lowest frequency co-phasing all elements; ``hz is None`` means any frequency works."""

    hz: Optional[float]

    @property
    def is_any(self):
        return self.hz is None

    def resolve(self, f_min):
        """Concrete frequency, taking ``f_min`` (highest path gain) when any is optimal."""
        return f_min if self.hz is None else self.hz


ANY_FREQUENCY = OptimalFrequency(None)


def array_frequency(geom):
    """Frequency whose wavelength equals the element spacing."""
    return SPEED_OF_LIGHT / geom.spacing


def _optimal_for_sum(sine_sum, f_a):
    if sine_sum == 0:
        return ANY_FREQUENCY
    return OptimalFrequency(f_a / abs(sine_sum))


def optimal_frequency_los(theta, f_a):
    return _optimal_for_sum(np.sin(theta), f_a)


def optimal_frequency_nlos(theta_r, theta_t, f_a):
    return _optimal_for_sum(np.sin(theta_r) + np.sin(theta_t), f_a)


def cophasing_residual(geom, wl, theta, theta_t=None):
    """Largest phase misalignment (radians) among the elements at wavelength ``wl``.

    Element ``n`` is aligned when ``n d_A s / lambda`` is an integer, with
    ``s = sin(theta)`` for LoS or ``s = sin(theta_R) + sin(theta_T)`` when
    ``theta_t`` is given. Returns 0 for perfect co-phasing.
    """
    s = np.sin(theta) if theta_t is None else np.sin(theta) + np.sin(theta_t)
    n = np.arange(1, geom.n_elements + 1)
    q = n * (geom.spacing * s / wl)
    return float(2 * np.pi * np.max(np.abs(q - np.round(q))))


@dataclass(frozen=True)
class CoverageReport:
    """Receiver directions where the small-scale power bound is attainable.

    For LoS, ``theta_plus`` is the boundary angle and ``theta_minus`` its
    mirror ``-theta_plus``. For a surface-aided link these are the receiver
    boundary angles; ``theta_plus`` is ``None`` when the second covered
    interval does not exist. For ``theta_t > 0`` they are the mirror images
    of the values computed at ``-theta_t``. ``intervals`` is the covered set
    as closed intervals.
    """

    mode: str
    width_ratio: float
    theta_t: Optional[float]
    theta_minus: float
    theta_plus: Optional[float]
    coverage: float
    intervals: tuple

    def contains(self, theta):
        return any(lo <= theta <= hi for lo, hi in self.intervals)

    def frequency_range(self, f_a=1.0):
        """The pinned ``[f_min, f_max]`` these closed forms assume."""
        if self.mode == "los":
            f_min = f_a
        else:
            f_min = f_a / (1 + abs(np.sin(self.theta_t)))
        return FrequencyRange(f_min, self.width_ratio)


def _check_width(w):
    if not w >= 1:
        raise ValueError(f"invalid range width: W={w} < 1")


def _arcsin(x):
    return float(np.arcsin(np.clip(x, -1.0, 1.0)))


def coverage_los(w):
    _check_width(w)
    theta_plus = _arcsin(1 / w)
    return CoverageReport(
        mode="los",
        width_ratio=w,
        theta_t=None,
        theta_minus=-theta_plus,
        theta_plus=theta_plus,
        coverage=np.pi - 2 * theta_plus,
        intervals=((-np.pi / 2, -theta_plus), (theta_plus, np.pi / 2)),
    )


def coverage_nlos(w, theta_t):
    _check_width(w)
    if abs(theta_t) > np.pi / 2:
        raise ValueError(f"theta_t must lie in [-pi/2, pi/2], got {theta_t}")
    if theta_t > 0:
        base = coverage_nlos(w, -theta_t)
        return CoverageReport(
            mode="nlos",
            width_ratio=w,
            theta_t=theta_t,
            theta_minus=-base.theta_minus,
            theta_plus=None if base.theta_plus is None else -base.theta_plus,
            coverage=base.coverage,
            intervals=tuple(sorted((-hi, -lo) for lo, hi in base.intervals)),
        )

    st = np.sin(theta_t)
    theta_minus = -_arcsin((1 + (w - 1) * st) / w)
    intervals = [(-np.pi / 2, theta_minus)]
    theta_plus = None
    coverage = theta_minus + np.pi / 2
    if theta_t >= np.arcsin((1 - w) / (1 + w)):
        theta_plus = _arcsin((1 - (w + 1) * st) / w)
        intervals.append((theta_plus, np.pi / 2))
        coverage = np.pi + theta_minus - theta_plus
    return CoverageReport(
        mode="nlos",
        width_ratio=w,
        theta_t=theta_t,
        theta_minus=theta_minus,
        theta_plus=theta_plus,
        coverage=coverage,
        intervals=tuple(intervals),
    )


def coverage_numeric_check(report, resolution):
    """Cross-check a coverage report by sweeping directions.

    On a uniform grid of receiver angles with step ``resolution`` (radians),
    a direction counts as covered when its optimal frequency falls inside the
    pinned frequency range. Directions where any frequency is optimal are
    measure-zero and skipped, as are points within one step of a boundary.
    """
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    band = report.frequency_range()
    lo, hi = band.f_min * (1 - 1e-12), band.f_max * (1 + 1e-12)
    boundaries = [b for interval in report.intervals for b in interval]
    n_steps = int(np.floor(np.pi / resolution))
    grid = -np.pi / 2 + resolution * np.arange(n_steps + 1)
    for theta in grid:
        if min(abs(theta - b) for b in boundaries) <= resolution:
            continue
        if report.mode == "los":
            f_opt = optimal_frequency_los(theta, 1.0)
        else:
            f_opt = optimal_frequency_nlos(theta, report.theta_t, 1.0)
        if f_opt.is_any:
            continue
        if (lo <= f_opt.hz <= hi) != report.contains(theta):
            return False
    return True
