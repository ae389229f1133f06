"""
A fixed surface as a frequency-steered reflector
================================================

A surface with every element short-circuited (reflection -1) has no tunable
parts. Still, at the right carrier its reflected beam points at the
receiver and delivers 4 P_T N^2, the same bound a perfect RIS would face.
"""

import numpy as np

from movsig import (
    NlosScenario,
    UlaGeometry,
    array_frequency,
    coverage_nlos,
    optimal_frequency_nlos,
    received_power,
)

n = 64
theta_t = np.deg2rad(-10)
geom = UlaGeometry(n, 299792458 / (8e9 * (1 - np.sin(theta_t))))
f_a = array_frequency(geom)

rep = coverage_nlos(1.8, theta_t)
print("theta_T = -10 deg, W = 1.8")
print(f"  theta_R- = {np.rad2deg(rep.theta_minus):.3f} deg, theta_R+ = {np.rad2deg(rep.theta_plus):.3f} deg")
print(f"  coverage {np.rad2deg(rep.coverage):.2f} deg of 180")

for deg in (-80, -40, -29, 10, 30, 60, 85):
    theta_r = np.deg2rad(deg)
    f_opt = optimal_frequency_nlos(theta_r, theta_t, f_a)
    f = f_opt.resolve(8e9)
    p = received_power(NlosScenario(geom, 5.0, theta_r, 10.0, theta_t, include_path_gain=False), f)
    if f_opt.is_any:
        inside = "specular, any frequency"
    else:
        inside = "covered" if rep.contains(theta_r) else "outside band"
    print(f"  theta_R {deg:4d}: f* {f / 1e9:7.3f} GHz, P/(4 N^2) = {p / (4 * n * n):.9f}  ({inside})")

# once the transmitter is far enough off broadside the upper interval vanishes
rep = coverage_nlos(1.8, np.deg2rad(-50))
print(f"theta_T = -50 deg: theta_R- = {np.rad2deg(rep.theta_minus):.3f}, second interval: {rep.theta_plus}")
