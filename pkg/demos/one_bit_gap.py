"""
One-bit sign rules against exhaustive search
============================================

Both one-bit quantizers use a closed-form sign rule. For N = 10 all 2^N
configurations can be scored, which shows how far the rule falls short.
"""

import numpy as np

from movsig import FarFieldLink, UlaGeometry, los_channel, wavelength
from movsig.reconfig import (
    egt_exhaustive,
    egt_one_bit,
    precoder_power,
    ris_one_bit,
    ris_one_bit_exhaustive,
    surface_power,
)

rng = np.random.default_rng(0)
geom = UlaGeometry(10, 299792458 / 8e9)
egt, ris = [], []
for _ in range(300):
    wl = wavelength(rng.uniform(8e9, 14.4e9))
    h = los_channel(geom, FarFieldLink(10.0, rng.uniform(-np.pi / 2, np.pi / 2)), wl)
    egt.append(precoder_power(h, egt_one_bit(h)) / precoder_power(h, egt_exhaustive(h)))
    h_r = los_channel(geom, FarFieldLink(5.0, rng.uniform(-np.pi / 2, np.pi / 2)), wl)
    h_t = los_channel(geom, FarFieldLink(10.0, rng.uniform(-np.pi / 2, np.pi / 2)), wl)
    ris.append(surface_power(h_r, ris_one_bit(h_r, h_t), h_t)
               / surface_power(h_r, ris_one_bit_exhaustive(h_r, h_t), h_t))

for name, r in (("EGT", np.array(egt)), ("RIS", np.array(ris))):
    print(f"{name}: mean {r.mean():.1%}, median {np.median(r):.1%}, "
          f"optimal in {np.mean(r > 1 - 1e-12):.0%} of channels, worst {r.min():.1%}")
