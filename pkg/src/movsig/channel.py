"""Deterministic channel models.

All small-scale channels here are unit-modulus phase vectors; path gain is a
separate factor (see :func:`path_gain`) composed by the caller. Wavelength
arguments may be scalars or arrays; an array of shape ``(S,)`` yields channels
of shape ``(S, N)`` so a whole subchannel grid is evaluated at once.
"""

from dataclasses import dataclass

import numpy as np

from .geometry import element_indices

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


def wavelength(frequency):
    return SPEED_OF_LIGHT / np.asarray(frequency, dtype=float)


def frequency(wl):
    return SPEED_OF_LIGHT / np.asarray(wl, dtype=float)


def ula_channel(geom, distance, sin_theta, wl):
    """Broadcasting core of :func:`los_channel`.

    ``distance``, ``sin_theta`` and ``wl`` broadcast against each other; the
    element axis is appended last.
    """
    x = element_indices(geom.n_elements) * geom.spacing
    sin_theta = np.asarray(sin_theta, dtype=float)[..., np.newaxis]
    wl = np.asarray(wl, dtype=float)[..., np.newaxis]
    d = np.asarray(distance, dtype=float)[..., np.newaxis]
    return np.exp(-1j * (2 * np.pi / wl) * (d - x * sin_theta))


def los_channel(geom, link, wl):
    """Far-field channel from a ULA to a single antenna.

    ``[h]_n = exp(-j 2pi/lambda (d - (n - (N+1)/2) d_A sin(theta)))``
    """
    return ula_channel(geom, link.distance, np.sin(link.angle), wl)


def fis_link_channel(geom, link, wl):
    """Surface-to-terminal channel; same far-field form as :func:`los_channel`."""
    return los_channel(geom, link, wl)


def cascaded_channel(h_r, theta, h_t):
    """Surface-aided channel including the structural scattering term.

    ``h = sum_n h_R[n] e^{j theta_n} h_T[n] - sum_n h_R[n] h_T[n]``

    ``theta`` holds the reflection phases (radians). Leading axes broadcast,
    so ``(S, N)`` inputs give ``S`` scalar channels.
    """
    h_r = np.asarray(h_r)
    h_t = np.asarray(h_t)
    theta = np.asarray(theta, dtype=float)
    if not (h_r.shape[-1] == h_t.shape[-1] == theta.shape[-1]):
        raise ValueError(
            f"length mismatch: h_R {h_r.shape[-1]}, theta {theta.shape[-1]}, h_T {h_t.shape[-1]}"
        )
    g = h_r * h_t
    return np.sum(g * np.exp(1j * theta), axis=-1) - np.sum(g, axis=-1)


def path_gain(distance, wl):
    """Free-space path gain ``(4 pi d / lambda)^-2``."""
    return (4 * np.pi * np.asarray(distance, dtype=float) / np.asarray(wl, dtype=float)) ** -2


def steering_vector(theta, geom, wl):
    """Normalised ULA steering vector referenced to the first element."""
    n = np.arange(geom.n_elements)
    wl = np.asarray(wl, dtype=float)[..., np.newaxis]
    phase = (2 * np.pi / wl) * geom.spacing * n * np.sin(theta)
    return np.exp(1j * phase) / np.sqrt(geom.n_elements)


def radiation_pattern_los(theta_grid, w, geom, wl):
    """Transmit pattern ``|a(theta) w|^2`` over a grid of directions."""
    theta_grid = np.asarray(theta_grid, dtype=float)
    n = np.arange(geom.n_elements)
    phase = (2 * np.pi / wl) * geom.spacing * np.multiply.outer(np.sin(theta_grid), n)
    a = np.exp(1j * phase) / np.sqrt(geom.n_elements)
    return np.abs(a @ np.asarray(w)) ** 2


def radiation_pattern_nlos(theta_r_grid, theta_t, geom, wl):
    """Reflection pattern ``|a(theta_R) a(theta_T)^T|^2`` of a uniform surface."""
    theta_r_grid = np.asarray(theta_r_grid, dtype=float)
    n = np.arange(geom.n_elements)
    s = np.sin(theta_r_grid) + np.sin(theta_t)
    phase = (2 * np.pi / wl) * geom.spacing * np.multiply.outer(s, n)
    return np.abs(np.exp(1j * phase).sum(axis=-1)) ** 2 / geom.n_elements**2


def array_gain(psi, n_elements):
    """``|sum_{k=0}^{N-1} exp(j k psi)|^2`` via the Dirichlet kernel.

    The phase step is reduced modulo 2pi first so that the evaluation stays
    accurate at grating lobes, where the naive ratio is 0/0.
    """
    psi = np.asarray(psi, dtype=float)
    delta = psi - 2 * np.pi * np.round(psi / (2 * np.pi))
    n = n_elements
    small = np.abs(delta) < 1e-6
    safe = np.where(small, 1.0, delta)
    ratio = np.sin(n * safe / 2) / np.sin(safe / 2)
    # second-order expansion around the lobe peak
    near = n**2 * (1 - (n**2 - 1) * delta**2 / 12)
    return np.where(small, near, ratio**2)


@dataclass(frozen=True)
class TwoRayEnvironment:
    """Direct path plus one reflection off an object.

    ``d_rt``: transmitter-receiver, ``d_ro``: object-receiver,
    ``d_ot``: transmitter-object distances in meters.
    """

    d_rt: float
    d_ro: float
    d_ot: float
    gamma: complex

    def __post_init__(self):
        if min(self.d_rt, self.d_ro, self.d_ot) <= 0:
            raise ValueError("distances must be positive")
        if abs(self.gamma) > 1:
            raise ValueError(f"|gamma| must not exceed 1, got {abs(self.gamma)}")


def two_ray_channel(env, wl):
    """Two-ray channel with free-space amplitudes ``lambda / (4 pi d_path)``."""
    wl = np.asarray(wl, dtype=float)
    k = 2 * np.pi / wl
    d_nlos = env.d_ro + env.d_ot
    a_rt = wl / (4 * np.pi * env.d_rt)
    a_rot = wl / (4 * np.pi * d_nlos)
    return a_rt * np.exp(-1j * k * env.d_rt) + a_rot * np.exp(-1j * k * env.d_ro) * env.gamma * np.exp(
        -1j * k * env.d_ot
    )
