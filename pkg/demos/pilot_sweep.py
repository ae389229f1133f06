"""
Picking the carrier with a pilot sweep
======================================

The transmitter sends one pilot per subchannel, the receiver reports the
strongest, and the link runs there. With path gain included the sweep
trades array gain against free-space loss.
"""

import numpy as np

from movsig import FrequencyRange, LosScenario, UlaGeometry, pilot_sweep, subchannel_grid, upper_bound

geom = UlaGeometry(64, 299792458 / 8e9)
band = FrequencyRange(8e9, 1.8)

for s in (16, 128, 1024):
    grid = subchannel_grid(band, s)
    result = pilot_sweep(LosScenario(geom, 10.0, np.deg2rad(60)), grid)
    bound = upper_bound(LosScenario(geom, 10.0, np.deg2rad(60)), band.f_min)
    print(f"S={s:5d}  B={grid.bandwidth / 1e6:8.3f} MHz  s*={result.index + 1:4d}  "
          f"f={result.frequency / 1e9:.4f} GHz  P/bound={result.power / bound:.4f}")

# broadside: every pilot is equally strong and the lowest frequency wins
result = pilot_sweep(LosScenario(geom, 10.0, 0.0, include_path_gain=False), subchannel_grid(band, 64))
print(f"broadside tie -> s*={result.index + 1}, f={result.frequency / 1e9:.1f} GHz")
