"""
The programmable measurement device: a controlled-unitary processor acting on
data ⊗ ancilla, steered by a program register, followed by independent
projective measurements on the three registers.

:func:`simulate` evolves the full density matrix and is the ground truth
against which every induced-POVM construction is checked.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Sequence

import numpy as np

from .qcore import (
    HADAMARD,
    I2,
    SY,
    SZ,
    STRUCT_TOL,
    DimensionError,
    HilbertLayout,
    as_matrix,
    check_density,
    check_orthonormal,
    check_unitary,
    computational_basis,
    dagger,
    projector,
    tensor,
    tensor_all,
)


class InvalidDeviceError(ValueError):
    pass


@dataclass(frozen=True)
class Processor:
    unitaries: tuple[np.ndarray, ...]
    program_basis: tuple[np.ndarray, ...]
    layout: HilbertLayout

    def __post_init__(self):
        U = tuple(as_matrix(u) for u in self.unitaries)
        P = tuple(np.asarray(p, dtype=complex) for p in self.program_basis)
        object.__setattr__(self, "unitaries", U)
        object.__setattr__(self, "program_basis", P)
        if len(self.layout) != 3:
            raise DimensionError("layout must list (data, ancilla, program) dimensions")
        d, da, dp = self.layout.dims
        if len(U) != dp or len(P) != dp:
            raise InvalidDeviceError(f"{len(U)} operations and {len(P)} program states for program dim {dp}")
        for k, u in enumerate(U):
            if u.shape != (d * da, d * da):
                raise DimensionError(f"operation {k} has shape {u.shape}, expected {(d * da, d * da)}")
            ok, dev = check_unitary(u, STRUCT_TOL)
            if not ok:
                raise InvalidDeviceError(f"operation {k} is not unitary (deviation {dev:.3g})")
        if any(p.shape != (dp,) for p in P) or not check_orthonormal(P):
            raise InvalidDeviceError("program basis is not orthonormal")

    @classmethod
    def build(cls, unitaries: Sequence[np.ndarray], data_dim: int, ancilla_dim: int = 1,
              program_basis: Sequence[np.ndarray] | None = None) -> "Processor":
        k = len(unitaries)
        basis = program_basis if program_basis is not None else computational_basis(k)
        return cls(tuple(unitaries), tuple(basis), HilbertLayout((data_dim, ancilla_dim, k)))


@dataclass(frozen=True)
class MeasurementModel:
    data_basis: tuple[np.ndarray, ...]
    ancilla_basis: tuple[np.ndarray, ...]
    program_basis: tuple[np.ndarray, ...]

    def __post_init__(self):
        for name in ("data_basis", "ancilla_basis", "program_basis"):
            basis = tuple(np.asarray(v, dtype=complex) for v in getattr(self, name))
            object.__setattr__(self, name, basis)
            if any(v.shape != (len(basis),) for v in basis) or not check_orthonormal(basis):
                raise InvalidDeviceError(f"{name} is not an orthonormal, complete basis")

    @property
    def layout(self) -> HilbertLayout:
        return HilbertLayout((len(self.data_basis), len(self.ancilla_basis), len(self.program_basis)))

    @classmethod
    def computational(cls, layout: HilbertLayout) -> "MeasurementModel":
        return cls(*(tuple(computational_basis(d)) for d in layout.dims))


def build_processor_unitary(p: Processor) -> np.ndarray:
    """sum_k U_k ⊗ |P_k><P_k| on data ⊗ ancilla ⊗ program."""
    return sum(tensor(u, projector(pk)) for u, pk in zip(p.unitaries, p.program_basis))


def build_measurement(m: MeasurementModel) -> list[np.ndarray]:
    """Rank-1 product projectors E_ijk in lexicographic (i, j, k) order."""
    return [
        tensor_all([projector(di), projector(aj), projector(pk)])
        for di in m.data_basis
        for aj in m.ancilla_basis
        for pk in m.program_basis
    ]


def simulate(p: Processor, m: MeasurementModel, rho_d, rho_a, rho_p) -> np.ndarray:
    """Outcome probabilities tr(E_ijk P rho P†), shaped (data, ancilla, program)."""
    if m.layout != p.layout:
        raise DimensionError(f"measurement layout {m.layout.dims} != processor layout {p.layout.dims}")
    rhos = [as_matrix(r) for r in (rho_d, rho_a, rho_p)]
    for r, dim in zip(rhos, p.layout.dims):
        if r.shape != (dim, dim):
            raise DimensionError(f"state of shape {r.shape} for a factor of dimension {dim}")
        if not check_density(r):
            raise ValueError("input state is not a valid density matrix")
    big = build_processor_unitary(p)
    rho = big @ tensor_all(rhos) @ dagger(big)
    # <ijk| rho |ijk> in the measurement basis: rotate, then read the diagonal
    change = tensor_all([np.array(b).T for b in (m.data_basis, m.ancilla_basis, m.program_basis)])
    probs = np.einsum("ai,ab,bi->i", change.conj(), rho, change).real
    probs = np.clip(probs, 0.0, None)
    return probs.reshape(p.layout.dims)


def simulate_pure(p: Processor, m: MeasurementModel, psi_d, psi_a, psi_p) -> np.ndarray:
    return simulate(p, m, projector(psi_d), projector(psi_a), projector(psi_p))


def spin_axis_bank() -> Processor:
    """Data-only bank {I, (σx+σz)/√2, (σy+σz)/√2}: z-measurement becomes z, x or y."""
    return Processor.build([I2, HADAMARD, (SY + SZ) / sqrt(2)], data_dim=2)
