"""
Seeded random multimeter instances and oracle comparisons for the four
induced-POVM constructions.

Each ``compare_*`` builds the POVM through the reduced formula and the same
device through :func:`multimeter.simulate`, and returns the largest
probability mismatch together with the POVM validation report.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import povm as pv
from .multimeter import MeasurementModel, Processor, simulate
from .qcore import HilbertLayout, random_basis, random_density, random_ket, random_unitary


@dataclass
class Instance:
    unitaries: list[np.ndarray]
    program_basis: list[np.ndarray]
    measured_program_basis: list[np.ndarray]
    data_basis: list[np.ndarray]
    ancilla_basis: list[np.ndarray]
    rho_d: np.ndarray
    rho_a: np.ndarray
    rho_p: np.ndarray
    xi: pv.PureProgram | None = None

    @property
    def layout(self) -> HilbertLayout:
        return HilbertLayout((len(self.data_basis), len(self.ancilla_basis), len(self.program_basis)))

    def processor(self) -> Processor:
        return Processor(tuple(self.unitaries), tuple(self.program_basis), self.layout)

    def measurement(self) -> MeasurementModel:
        return MeasurementModel(tuple(self.data_basis), tuple(self.ancilla_basis), tuple(self.measured_program_basis))

    def oracle(self) -> np.ndarray:
        return simulate(self.processor(), self.measurement(), self.rho_d, self.rho_a, self.rho_p)


def random_instance(seed: int, kind: str = "general") -> Instance:
    """kind: 'general', 'matched', 'no_ancilla' or 'pure_program'."""
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 4))
    k = int(rng.integers(2, 4))
    da = 1 if kind in ("no_ancilla", "pure_program") else 2
    U = [random_unitary(d * da, rng) for _ in range(k)]
    P = random_basis(k, rng)
    Pm = P if kind in ("matched", "no_ancilla") else random_basis(k, rng)
    D = random_basis(d, rng)
    A = random_basis(da, rng) if da > 1 else [np.ones(1, dtype=complex)]
    rho_a = random_density(da, rng) if da > 1 else np.ones((1, 1), dtype=complex)
    xi = None
    if kind == "pure_program":
        xi = pv.PureProgram(random_ket(k, rng))
        rho_p = xi.density(P)
    else:
        rho_p = random_density(k, rng)
    return Instance(U, P, Pm, D, A, random_density(d, rng), rho_a, rho_p, xi)


def induced(inst: Instance, kind: str) -> pv.Povm:
    if kind == "general":
        return pv.induced_povm_general(inst.unitaries, inst.program_basis, inst.data_basis, inst.ancilla_basis,
                                       inst.measured_program_basis, inst.rho_a, inst.rho_p)
    if kind == "matched":
        return pv.induced_povm_matched(inst.unitaries, inst.program_basis, inst.data_basis, inst.ancilla_basis,
                                       inst.rho_a, inst.rho_p)
    if kind == "no_ancilla":
        return pv.induced_povm_no_ancilla(inst.unitaries, inst.program_basis, inst.data_basis, inst.rho_p)
    if kind == "pure_program":
        return pv.program_contraction(inst.unitaries, inst.xi, inst.program_basis, inst.measured_program_basis,
                                      inst.data_basis)[1]
    raise ValueError(f"unknown construction {kind!r}")


def compare(seed: int, kind: str) -> tuple[float, pv.PovmReport]:
    inst = random_instance(seed, kind)
    povm = induced(inst, kind)
    p = pv.born_probabilities(povm, inst.rho_d)
    table = inst.oracle()
    # no-ancilla POVMs are labelled (i, k); the oracle grid has a dummy ancilla index
    ref = np.array([table[lab] if len(lab) == 3 else table[lab[0], 0, lab[1]] for lab in povm.labels])
    return float(np.max(np.abs(p - ref))), pv.validate_povm(povm)


CONSTRUCTIONS = ("general", "matched", "no_ancilla", "pure_program")
