"""
Complex amplitudes
==================

For a pair α|0⟩ ± β|1⟩ with complex α, β the success probability from the
evolved state agrees with 2 sin²θ |αβ|² / (1 − 2 cos θ Re(α*β)). A variant
with sin θ to the first power does not.
"""

from math import pi

import numpy as np

from qmultimeter import discriminator as dc

rng = np.random.default_rng(3)
print(f"{'|beta|':>7} {'phi0':>6} {'evolved':>9} {'sin^2':>9} {'sin^1':>9}")
for _ in range(6):
    mag = rng.uniform(0.1, 0.9)
    pair = dc.StatePair(np.sqrt(1 - mag**2) * np.exp(1j * rng.uniform(0, 2 * pi)),
                        mag * np.exp(1j * rng.uniform(0, 2 * pi)))
    d = dc.DiscriminatorDesign(rng.uniform(0.1, 1.4))
    print(f"{mag:7.3f} {d.phi0:6.3f} {dc.success_probability(pair, d):9.6f} "
          f"{dc.general_probability(pair, d):9.6f} {dc.sin_first_power_probability(pair, d):9.6f}")
