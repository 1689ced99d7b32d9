"""
A three-setting spin meter
==========================

One qubit of data, one qutrit of program. Program state k rotates the data so
that a fixed z-basis readout measures spin along z, x or y.
"""

import numpy as np

from qmultimeter.multimeter import MeasurementModel, simulate_pure, spin_axis_bank
from qmultimeter.povm import induced_povm_no_ancilla, validate_povm
from qmultimeter.qcore import computational_basis

bank = spin_axis_bank()
z = computational_basis(2)

# With a basis program state the device is just one projective measurement.
plus = np.array([1, 1]) / np.sqrt(2)
meas = MeasurementModel.computational(bank.layout)
for k, axis in enumerate("zxy"):
    table = simulate_pure(bank, meas, plus, np.ones(1), computational_basis(3)[k])
    print(f"program {k} ({axis}): P(up), P(down) on |+> = {np.round(table[:, 0, k], 6)}")

# An incoherent mixture of the three programs gives a six-outcome POVM.
povm = induced_povm_no_ancilla(bank.unitaries, bank.program_basis, z, np.eye(3) / 3)
print("\nPOVM valid:", validate_povm(povm).passed)
np.set_printoptions(precision=3, suppress=True)
for label, op in zip(povm.labels, povm.operators):
    print(f"outcome {label}, 3 x effect:\n{3 * op}")
