"""Subchannel grids, scenario received power and the pilot-sweep protocol.

The protocol is modelled in the received-power domain: the transmitter sends
one pilot per subchannel, the receiver picks the strongest (lowest index on
ties) and the link then runs at that centre frequency.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .channel import cascaded_channel, los_channel, path_gain, wavelength
from .geometry import FarFieldLink, UlaGeometry
from .reconfig import fis_matrix, uniform_precoder


@dataclass(frozen=True)
class SubchannelGrid:
    frequencies: np.ndarray
    bandwidth: float

    @property
    def size(self):
        return len(self.frequencies)


def subchannel_grid(frange, n_subchannels):
    """``S`` centre frequencies from ``f_min`` to ``f_max`` inclusive, spaced by ``B``."""
    if n_subchannels < 2:
        raise ValueError(f"grid too small: S={n_subchannels} < 2")
    freqs = np.linspace(frange.f_min, frange.f_max, n_subchannels)
    return SubchannelGrid(freqs, (frange.f_max - frange.f_min) / (n_subchannels - 1))


# A precoder/surface is either a fixed vector or a rule re-optimised from the
# channel at every frequency (the channel-aware baselines).
Precoder = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]
Surface = Union[np.ndarray, Callable[[np.ndarray, np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class LosScenario:
    geom: UlaGeometry
    distance: float
    theta: float
    precoder: Precoder = None
    power_w: float = 1.0
    include_path_gain: bool = True

    def __post_init__(self):
        FarFieldLink(self.distance, self.theta)
        if not self.power_w > 0:
            raise ValueError("transmit power must be positive")
        if self.precoder is None:
            object.__setattr__(self, "precoder", uniform_precoder(self.geom.n_elements))

    @property
    def n_elements(self):
        return self.geom.n_elements


@dataclass(frozen=True)
class NlosScenario:
    geom: UlaGeometry
    d_r: float
    theta_r: float
    d_t: float
    theta_t: float
    surface: Surface = None
    power_w: float = 1.0
    include_path_gain: bool = True

    def __post_init__(self):
        FarFieldLink(self.d_r, self.theta_r)
        FarFieldLink(self.d_t, self.theta_t)
        if not self.power_w > 0:
            raise ValueError("transmit power must be positive")
        if self.surface is None:
            object.__setattr__(self, "surface", fis_matrix(self.geom.n_elements))

    @property
    def n_elements(self):
        return self.geom.n_elements


def _resolve(config, *channels):
    return config(*channels) if callable(config) else np.asarray(config)


def received_power(scenario, f):
    """Received power (W) at carrier frequency ``f``; vectorised over ``f``."""
    wl = wavelength(f)
    if isinstance(scenario, LosScenario):
        h = los_channel(scenario.geom, FarFieldLink(scenario.distance, scenario.theta), wl)
        w = _resolve(scenario.precoder, h)
        power = scenario.power_w * np.abs(np.sum(h * w, axis=-1)) ** 2
        if scenario.include_path_gain:
            power = power * path_gain(scenario.distance, wl)
        return power
    h_r = los_channel(scenario.geom, FarFieldLink(scenario.d_r, scenario.theta_r), wl)
    h_t = los_channel(scenario.geom, FarFieldLink(scenario.d_t, scenario.theta_t), wl)
    theta = _resolve(scenario.surface, h_r, h_t)
    power = scenario.power_w * np.abs(cascaded_channel(h_r, theta, h_t)) ** 2
    if scenario.include_path_gain:
        power = power * path_gain(scenario.d_r, wl) * path_gain(scenario.d_t, wl)
    return power


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of one pilot sweep. ``index`` is zero-based."""

    index: int
    frequency: float
    profile: np.ndarray = field(repr=False)

    @property
    def power(self):
        return float(self.profile[self.index])


# Pilots within this relative distance of the strongest one count as ties.
# Rounding alone separates mathematically equal pilots by a few ulps.
TIE_RTOL = 1e-12


def select_strongest(profile):
    """Index of the strongest pilot, lowest index on ties."""
    profile = np.asarray(profile, dtype=float)
    peak = profile.max()
    return int(np.argmax(profile >= peak - TIE_RTOL * abs(peak)))


def pilot_sweep(scenario, grid, perturb: Optional[Callable[[np.ndarray], np.ndarray]] = None):
    """Run the three-stage frequency-selection protocol.

    ``perturb`` optionally maps the true pilot powers to measured ones (off by
    default: pilots are compared noiselessly). The returned profile is always
    the true power.
    """
    profile = np.asarray(received_power(scenario, grid.frequencies), dtype=float)
    measured = profile if perturb is None else perturb(profile)
    s = select_strongest(measured)
    return SelectionResult(s, float(grid.frequencies[s]), profile)


def upper_bound(scenario, f_min):
    """Frequency-independent power bound at the highest path gain (``f = f_min``)."""
    n = scenario.n_elements
    wl = wavelength(f_min)
    if isinstance(scenario, LosScenario):
        bound = scenario.power_w * n
        if scenario.include_path_gain:
            bound *= path_gain(scenario.distance, wl)
        return float(bound)
    bound = 4 * scenario.power_w * n**2
    if scenario.include_path_gain:
        bound *= path_gain(scenario.d_r, wl) * path_gain(scenario.d_t, wl)
    return float(bound)
