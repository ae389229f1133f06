"""
Average received power over random receiver directions
=======================================================

Monte Carlo over uniform directions at N = 64, P_T = 1 W, f_min = 8 GHz.
Movable signals use the uniform precoder (LoS) or a short-circuited surface
(NLoS); the baselines are one-bit EGT and one-bit RIS at f_min.
Fewer trials than the full study to keep the demo quick.
"""

import numpy as np

from movsig.experiments import SweepConfig, average_over_angles

los = average_over_angles(SweepConfig(mode="los", width_ratios=(1.1, 1.4, 1.8), trials=1000,
                                      baselines=("movable", "egt_1bit", "upper_bound")))
print("LoS (d = 10 m), mean power in nW")
for row in los.rows:
    print(f"  W={row[0]:.1f}  movable {row[1] * 1e9:7.2f}  one-bit EGT {row[3] * 1e9:7.2f}  bound {row[5] * 1e9:7.2f}")

for theta_t in (0.0, -90.0):
    cfg = SweepConfig(mode="nlos", theta_t=np.deg2rad(theta_t), width_ratios=(1.1, 1.8), trials=1000,
                      baselines=("fis_movable", "ris_1bit"))
    table = average_over_angles(cfg)
    print(f"NLoS theta_T = {theta_t:.0f} deg (d_R = 5 m, d_T = 10 m), mean power in pW")
    for row in table.rows:
        print(f"  W={row[0]:.1f}  FIS + movable {row[1] * 1e12:8.3f}  one-bit RIS {row[3] * 1e12:8.3f}")
