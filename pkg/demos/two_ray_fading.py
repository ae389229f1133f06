"""
Frequency-selective fading in a two-ray channel
===============================================

A direct path plus one reflection. Sweeping the carrier moves the receiver
in and out of deep fades, which is the effect movable signals exploit.
"""

import numpy as np

from movsig import TwoRayEnvironment, two_ray_channel, wavelength

env = TwoRayEnvironment(d_rt=10.0, d_ro=6.0, d_ot=6.5, gamma=-0.8)

# 2 to 4 GHz in 1 MHz steps
f = np.arange(2e9, 4e9 + 1, 1e6)
gain_db = 20 * np.log10(np.abs(two_ray_channel(env, wavelength(f))))

# the extra path length sets the fade period, c / (d_ro + d_ot - d_rt)
print(f"fade period  {299792458 / (env.d_ro + env.d_ot - env.d_rt) / 1e6:.1f} MHz")
print(f"best carrier {f[gain_db.argmax()] / 1e9:.3f} GHz  {gain_db.max():.1f} dB")
print(f"worst carrier {f[gain_db.argmin()] / 1e9:.3f} GHz  {gain_db.min():.1f} dB")
print(f"spread       {gain_db.max() - gain_db.min():.1f} dB")
