"""
Steering a fixed array by changing the frequency
================================================

A 64-element array with a fixed uniform precoder only beams broadside. Its
grating lobes, however, move with the wavelength, so picking the carrier
per receiver direction recovers the full array gain P_T N.
"""

import numpy as np

from movsig import (
    LosScenario,
    UlaGeometry,
    array_frequency,
    coverage_los,
    optimal_frequency_los,
    radiation_pattern_los,
    received_power,
    uniform_precoder,
    wavelength,
)

geom = UlaGeometry(64, 299792458 / 8e9)  # spacing of one wavelength at 8 GHz
f_a = array_frequency(geom)

print("theta   f* (GHz)   P/(P_T N)")
for deg in (-90, -60, -40, 10, 35, 70):
    theta = np.deg2rad(deg)
    f = optimal_frequency_los(theta, f_a).hz
    p = received_power(LosScenario(geom, 10.0, theta, include_path_gain=False), f)
    print(f"{deg:5d}   {f / 1e9:8.3f}   {p / 64:.12f}")

# with f in [f_A, W f_A] only |theta| >= arcsin(1/W) is reachable
for w in (1.1, 1.4, 1.8, 2.0):
    rep = coverage_los(w)
    print(f"W={w}: theta+ = {np.rad2deg(rep.theta_plus):6.2f} deg, coverage {np.rad2deg(rep.coverage):6.2f} deg")

# the grating lobe sits exactly on the target at f*
theta0 = np.deg2rad(50)
grid = np.deg2rad(np.arange(-90, 90.5, 0.5))
pattern = radiation_pattern_los(grid, uniform_precoder(64), geom, wavelength(optimal_frequency_los(theta0, f_a).hz))
peaks = np.rad2deg(grid[pattern > 0.999])
print("lobes at f*(50 deg):", ", ".join(f"{p:.1f}" for p in peaks))
