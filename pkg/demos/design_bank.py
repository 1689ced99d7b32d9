"""
Choosing the device angle
=========================

Average the ratio R(φ, φ₀) over pair angles in (0, π/2), pick the best φ₀,
then split the window and let the program register switch between designs.
"""

from math import pi

import numpy as np

from qmultimeter import discriminator as dc
from qmultimeter.optimize import Interval, average_ratio, best_phi0, design_bank, select_program

window = Interval(0.0, pi / 2)
phi0, avg = best_phi0(window)
print(f"single design: phi0* = {phi0 / pi:.4f} pi, mean R = {avg:.4f}")
print(f"quasi-classical device (phi0 = 0): mean R = {average_ratio(0.0, window):.4f}")

for k in (2, 3, 4):
    bank = design_bank(k, window)
    means = [average_ratio(d.phi0, seg) for d, seg in zip(bank.designs, window.split(k))]
    print(f"K={k}: phi0/pi = {np.round(np.array(bank.phis) / pi, 4).tolist()}, "
          f"mean R = {np.mean(means):.4f}")

bank = design_bank(3, window)
for phi in (0.1, 0.6, 1.2, 1.5):
    i, prog = select_program(bank, dc.StatePair.from_phi(phi))
    print(f"phi = {phi:.2f}: design {i}, R = {dc.ratio_R(phi, bank.phis[i]):.4f}")
