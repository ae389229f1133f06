"""Angle sweeps, angle-averaged Monte Carlo and the FIS/RIS scaling study.

Randomness comes from a counter-based Philox generator: trial ``t`` of a run
with seed ``s`` always reads counter block ``t`` under key ``(s, stream)``, so
results do not depend on how trials are split across worker threads. Work is
cut into fixed-size chunks and reassembled in order, which keeps tables
bit-identical for any ``threads`` value.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Optional

import numpy as np

from .channel import SPEED_OF_LIGHT, array_gain, cascaded_channel, path_gain, ula_channel, wavelength
from .freqplan import FrequencyRange
from .geometry import UlaGeometry
from .protocol import LosScenario, NlosScenario, pilot_sweep, received_power, subchannel_grid, upper_bound
from .reconfig import (
    best_of,
    egt_ideal,
    egt_one_bit,
    fis_matrix,
    precoder_power,
    ris_one_bit,
    ris_optimal,
    surface_power,
    uniform_precoder,
)
from .results import ResultTable

LOS_BASELINES = ("movable", "egt_1bit", "egt_ideal", "movable_egt")
NLOS_BASELINES = ("fis_movable", "ris_1bit", "ris_continuous", "movable_ris")
UPPER_BOUND = "upper_bound"
DEFAULT_BANDWIDTH = 6.25e6

_AVERAGE_STREAM = 1
_SCALING_STREAM = 2
_CHUNK = 256


def trial_uniforms(seed, stream, n_trials, start=0):
    """Four uniforms in [0, 1) per trial from Philox counter blocks ``start..``."""
    bitgen = np.random.Philox(key=np.array([seed, stream], dtype=np.uint64))
    bitgen.advance(start)
    raw = bitgen.random_raw(4 * n_trials).reshape(n_trials, 4)
    return (raw >> np.uint64(11)).astype(float) * 2.0**-53


def _map_ordered(fn, items, threads):
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _chunks(n, size=_CHUNK):
    return [slice(i, min(i + size, n)) for i in range(0, n, size)]


@dataclass(frozen=True)
class SweepConfig:
    """Numerology for angle sweeps and angle averages.

    Angles are radians. ``n_subchannels=None`` picks ``S`` so that the grid
    spacing is close to ``subchannel_bandwidth``. ``width_ratios`` is only used
    by :func:`average_over_angles`; ``width_ratio`` by the sweep.
    """

    mode: str = "los"
    n_elements: int = 64
    power_w: float = 1.0
    distance: float = 10.0
    d_r: float = 5.0
    d_t: float = 10.0
    theta_t: float = 0.0
    f_min: float = 8e9
    width_ratio: float = 1.8
    n_subchannels: Optional[int] = None
    subchannel_bandwidth: float = DEFAULT_BANDWIDTH
    baselines: tuple = ()
    angle_step: float = float(np.deg2rad(0.25))
    width_ratios: tuple = (1.1, 1.8)
    trials: int = 10_000
    seed: int = 0
    include_path_gain: bool = True
    threads: int = 1

    def __post_init__(self):
        if self.mode not in ("los", "nlos"):
            raise ValueError(f"mode must be 'los' or 'nlos', got {self.mode!r}")
        known = (LOS_BASELINES if self.mode == "los" else NLOS_BASELINES) + (UPPER_BOUND,)
        if not self.baselines:
            object.__setattr__(self, "baselines", known[:-1])
        object.__setattr__(self, "baselines", tuple(self.baselines))
        object.__setattr__(self, "width_ratios", tuple(self.width_ratios))
        unknown = set(self.baselines) - set(known)
        if unknown:
            raise ValueError(f"unknown baselines for {self.mode}: {sorted(unknown)}")
        if not self.angle_step > 0:
            raise ValueError("angle_step must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.power_w > 0:
            raise ValueError("transmit power must be positive")
        if min(self.distance, self.d_r, self.d_t) <= 0:
            raise ValueError("distances must be positive")
        if abs(self.theta_t) > np.pi / 2:
            raise ValueError("theta_t must lie in [-pi/2, pi/2]")
        for w in (self.width_ratio,) + self.width_ratios:
            FrequencyRange(self.f_min, w)
        if self.n_subchannels is not None and self.n_subchannels < 2:
            raise ValueError(f"grid too small: S={self.n_subchannels} < 2")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def to_dict(self):
        d = asdict(self)
        del d["threads"]  # worker count never changes the table
        d["baselines"] = list(self.baselines)
        d["width_ratios"] = list(self.width_ratios)
        return d

    def subchannels(self, w):
        if self.n_subchannels is not None:
            return self.n_subchannels
        return max(2, int(round((w - 1) * self.f_min / self.subchannel_bandwidth)))

    def grid(self, w):
        return subchannel_grid(FrequencyRange(self.f_min, w), self.subchannels(w))

    def geometry(self):
        """Element spacing chosen so the lowest optimal frequency equals ``f_min``."""
        if self.mode == "los":
            spacing = SPEED_OF_LIGHT / self.f_min
        else:
            spacing = SPEED_OF_LIGHT / (self.f_min * (1 + abs(np.sin(self.theta_t))))
        return UlaGeometry(self.n_elements, spacing)

    def angles(self):
        n = int(round(np.pi / self.angle_step))
        return np.linspace(-np.pi / 2, np.pi / 2, n + 1)

    def scenario(self, angle, rule=None):
        if self.mode == "los":
            return LosScenario(
                self.geometry(), self.distance, angle, rule, self.power_w, self.include_path_gain
            )
        return NlosScenario(
            self.geometry(), self.d_r, angle, self.d_t, self.theta_t, rule, self.power_w,
            self.include_path_gain,
        )


def _uniform_rule(h):
    return uniform_precoder(h.shape[-1])


def _fis_rule(h_r, h_t):
    return fis_matrix(h_r.shape[-1])


def _egt_score(w, h):
    return precoder_power(h, w)


def _ris_score(theta, h_r, h_t):
    return surface_power(h_r, theta, h_t)


# name -> (rule, movable). A movable baseline runs the pilot sweep with its
# rule re-applied at every subchannel; the others stay at f_min. The joint
# baselines keep the fixed configuration as a candidate so they can never
# fall below movable signals alone.
_BASELINES = {
    "movable": (None, True),
    "egt_1bit": (egt_one_bit, False),
    "egt_ideal": (egt_ideal, False),
    "movable_egt": (best_of(egt_one_bit, _uniform_rule, score=_egt_score), True),
    "fis_movable": (None, True),
    "ris_1bit": (ris_one_bit, False),
    "ris_continuous": (ris_optimal, False),
    "movable_ris": (best_of(ris_one_bit, _fis_rule, score=_ris_score), True),
}


def baseline_power(config, name, angle, grid):
    """Power (W) one baseline delivers to a receiver at ``angle``."""
    scenario = config.scenario(angle)
    if name == UPPER_BOUND:
        return upper_bound(scenario, config.f_min)
    rule, movable = _BASELINES[name]
    scenario = config.scenario(angle, rule)
    if movable:
        return pilot_sweep(scenario, grid).power
    return float(received_power(scenario, config.f_min))


def sweep_receiver_angle(config):
    """Received power versus receiver direction, one row per grid angle."""
    grid = config.grid(config.width_ratio)
    angles = config.angles()
    names = [b for b in config.baselines if b != UPPER_BOUND]

    def run(chunk):
        return [
            [baseline_power(config, name, a, grid) for name in names]
            + [baseline_power(config, UPPER_BOUND, a, grid)]
            for a in angles[chunk]
        ]

    parts = _map_ordered(run, _chunks(len(angles), 16), config.threads)
    powers = np.array([row for part in parts for row in part]).reshape(len(angles), -1)
    columns = ["angle_deg"] + [f"power_w_{b}" for b in names] + ["upper_bound_w"]
    rows = np.column_stack([np.rad2deg(angles), powers])
    return ResultTable(columns, rows, {"config": config.to_dict(), "seed": config.seed})


def _movable_fast(config, grid, angles):
    """Pilot-sweep power for the fixed uniform precoder / FIS, batched over angles.

    Uses the closed-form array gain instead of explicit channel vectors; the
    two routes agree to rounding (checked in the test suite).
    """
    geom = config.geometry()
    f = grid.frequencies
    wl = wavelength(f)
    n = geom.n_elements
    if config.mode == "los":
        s = np.sin(angles)[:, np.newaxis]
        profile = config.power_w * array_gain(2 * np.pi * geom.spacing * s / wl, n) / n
        if config.include_path_gain:
            profile = profile * path_gain(config.distance, wl)
    else:
        s = (np.sin(angles) + np.sin(config.theta_t))[:, np.newaxis]
        profile = 4 * config.power_w * array_gain(2 * np.pi * geom.spacing * s / wl, n)
        if config.include_path_gain:
            profile = profile * path_gain(config.d_r, wl) * path_gain(config.d_t, wl)
    idx = np.argmax(profile, axis=1)
    return profile[np.arange(len(angles)), idx]


def _movable_rule_batch(config, name, grid, angles, block=8):
    """Pilot-sweep power for a channel-aware movable baseline, batched over angles.

    Channels are built as (angle, subchannel, element) arrays in blocks of
    ``block`` angles to bound memory; same arithmetic as :func:`pilot_sweep`.
    """
    geom = config.geometry()
    rule, _ = _BASELINES[name]
    wl = wavelength(grid.frequencies)
    out = []
    for start in range(0, len(angles), block):
        s = np.sin(angles[start:start + block])[:, np.newaxis]
        if config.mode == "los":
            h = ula_channel(geom, config.distance, s, wl)
            power = config.power_w * precoder_power(h, rule(h))
            if config.include_path_gain:
                power = power * path_gain(config.distance, wl)
        else:
            h_r = ula_channel(geom, config.d_r, s, wl)
            h_t = np.broadcast_to(ula_channel(geom, config.d_t, np.sin(config.theta_t), wl), h_r.shape)
            power = config.power_w * np.abs(cascaded_channel(h_r, rule(h_r, h_t), h_t)) ** 2
            if config.include_path_gain:
                power = power * path_gain(config.d_r, wl) * path_gain(config.d_t, wl)
        out.append(power.max(axis=1))
    return np.concatenate(out)


def _fixed_batch(config, name, angles):
    """Fixed-frequency baselines at f_min, batched over receiver angles."""
    geom = config.geometry()
    wl = wavelength(config.f_min)
    rule, _ = _BASELINES[name]
    if config.mode == "los":
        h = ula_channel(geom, config.distance, np.sin(angles), wl)
        power = config.power_w * precoder_power(h, rule(h))
        if config.include_path_gain:
            power = power * path_gain(config.distance, wl)
        return power
    h_r = ula_channel(geom, config.d_r, np.sin(angles), wl)
    h_t = ula_channel(geom, config.d_t, np.sin(config.theta_t), wl)
    h_t = np.broadcast_to(h_t, h_r.shape)
    power = config.power_w * np.abs(cascaded_channel(h_r, rule(h_r, h_t), h_t)) ** 2
    if config.include_path_gain:
        power = power * path_gain(config.d_r, wl) * path_gain(config.d_t, wl)
    return power


def _average_chunk(config, w, angles):
    grid = config.grid(w)
    cfg = replace(config, width_ratio=w)
    out = []
    for name in config.baselines:
        if name in ("movable", "fis_movable"):
            out.append(_movable_fast(cfg, grid, angles))
        elif name == UPPER_BOUND:
            out.append(np.full(len(angles), baseline_power(cfg, name, angles[0], grid)))
        elif _BASELINES[name][1]:
            out.append(_movable_rule_batch(cfg, name, grid, angles))
        else:
            out.append(_fixed_batch(cfg, name, angles))
    return np.stack(out)


def draw_angles(seed, n_trials, stream=_AVERAGE_STREAM):
    """Receiver directions uniform on [-pi/2, pi/2), one per trial."""
    return -np.pi / 2 + np.pi * trial_uniforms(seed, stream, n_trials)[:, 0]


def average_over_angles(config):
    """Monte-Carlo mean power over uniform receiver directions, one row per W.

    The same angle draws are reused for every W.
    """
    angles = draw_angles(config.seed, config.trials)
    chunks = _chunks(config.trials)
    rows = []
    for w in config.width_ratios:
        parts = _map_ordered(lambda c: _average_chunk(config, w, angles[c]), chunks, config.threads)
        powers = np.concatenate(parts, axis=1)
        mean = powers.mean(axis=1)
        if config.trials > 1:
            stderr = powers.std(axis=1, ddof=1) / np.sqrt(config.trials)
        else:
            stderr = np.zeros_like(mean)
        rows.append(np.concatenate([[w], np.ravel(np.column_stack([mean, stderr]))]))
    columns = ["W"]
    for b in config.baselines:
        columns += [f"mean_power_w_{b}", f"stderr_w_{b}"]
    return ResultTable(columns, np.array(rows), {"config": config.to_dict(), "seed": config.seed})


def theory_ris_mean(n, power_w=1.0):
    """Closed-form approximation of the mean optimal-RIS power."""
    return power_w * (n**2 + np.sqrt(np.pi * n) * n + n)


def _scaling_chunk(n, power_w, theta_r, theta_t):
    geom = UlaGeometry(n, 1.0)  # spacing and distances do not affect the result
    d_r, d_t = 5.0, 10.0
    f_a = SPEED_OF_LIGHT / geom.spacing
    sr, st = np.sin(theta_r), np.sin(theta_t)
    s = np.abs(sr + st)
    f_star = np.where(s == 0, f_a, f_a / np.where(s == 0, 1.0, s))
    wl = wavelength(f_star)
    h_r = ula_channel(geom, d_r, sr, wl)
    h_t = ula_channel(geom, d_t, st, wl)
    fis = power_w * np.abs(cascaded_channel(h_r, fis_matrix(n), h_t)) ** 2

    wl_half = 2 * geom.spacing
    h_r = ula_channel(geom, d_r, sr, wl_half)
    h_t = ula_channel(geom, d_t, st, wl_half)
    ris = power_w * np.abs(cascaded_channel(h_r, ris_optimal(h_r, h_t), h_t)) ** 2
    closed = power_w * (n + np.abs(np.sum(h_r * h_t, axis=-1))) ** 2
    return fis, ris, np.abs(ris - closed) / closed


def scaling_study(n_list, trials, seed, power_w=1.0, threads=1):
    """Mean received power versus surface size: FIS at the optimal frequency
    against a continuously optimised RIS at half-wavelength spacing.

    Both terminal directions are drawn uniformly on [-pi/2, pi/2).
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if any(n < 1 for n in n_list):
        raise ValueError("every N must be at least 1")
    u = trial_uniforms(seed, _SCALING_STREAM, trials)
    theta_r = -np.pi / 2 + np.pi * u[:, 0]
    theta_t = -np.pi / 2 + np.pi * u[:, 1]
    rows, worst = [], 0.0
    for n in n_list:
        parts = _map_ordered(
            lambda c: _scaling_chunk(n, power_w, theta_r[c], theta_t[c]), _chunks(trials, 1024), threads
        )
        fis, ris, err = (np.concatenate(p) for p in zip(*parts))
        worst = max(worst, float(err.max()))
        se = (lambda x: x.std(ddof=1) / np.sqrt(trials)) if trials > 1 else (lambda x: 0.0)
        rows.append(
            [n, fis.mean(), ris.mean(), 4 * power_w * n**2, theory_ris_mean(n, power_w), se(fis), se(ris)]
        )
    columns = [
        "N", "mean_power_fis_w", "mean_power_ris_w", "theory_fis_w", "theory_ris_w",
        "stderr_fis_w", "stderr_ris_w",
    ]
    meta = {
        "config": {"n_list": list(n_list), "trials": trials, "seed": seed, "power_w": power_w},
        "seed": seed,
        "max_ris_identity_error": worst,
    }
    return ResultTable(columns, np.array(rows, dtype=float), meta)
