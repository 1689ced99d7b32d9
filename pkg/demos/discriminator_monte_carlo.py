"""
Never wrong, sometimes silent
=============================

A fixed discriminator built for pair angle φ₀ = π/4 is reprogrammed through
its ancilla to separate a pair at φ = π/3. A million seeded trials show no
wrong identifications, and the success rate lands on the analytic value.
"""

from math import pi

from qmultimeter import discriminator as dc
from qmultimeter.simlab import Scenario, compare_analytic, monte_carlo

pair = dc.StatePair.from_phi(pi / 3)
design = dc.DiscriminatorDesign(pi / 4)
program = dc.solve_program(pair, design)
print(f"ancilla program: a = {program.a.real:.7f}, b = {program.b.real:.7f}")

p = dc.success_probability(pair, design)
print(f"analytic success {p:.7f}, optimal {dc.optimal_probability(pair.phi):.7f}, "
      f"ratio {dc.ratio_R(pair.phi, design.phi0):.7f}")

stats = monte_carlo(Scenario(pair, design, trials=1_000_000, seed=42))
cmp = compare_analytic(stats, p)
print(f"successes {stats.successes}, inconclusive {stats.inconclusive}, wrong {stats.errors}")
print(f"frequency {cmp.frequency:.6f}, z = {cmp.z:.2f}, pass = {cmp.passed}")

# Negative control: a program solved for the wrong angle does make mistakes.
wrong = dc.solve_program(dc.StatePair.from_phi(pi / 6), design)
bad = monte_carlo(Scenario(pair, design, program=wrong, trials=200_000, seed=1))
print(f"\nmismatched program: wrong identifications {bad.errors} of {bad.trials}")
