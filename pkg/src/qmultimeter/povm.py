"""
POVM data model, validation, Born-rule evaluation and sampling, and the
POVMs induced on the data register by a programmable processor.

Effects with negligible norm are kept so outcome labels stay aligned with
the (i, j, k) index grid of the underlying projective measurement.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .qcore import (
    NORM_TOL,
    STRUCT_TOL,
    DimensionError,
    HilbertLayout,
    as_matrix,
    check_density,
    check_orthonormal,
    check_unitary,
    dagger,
    hermitian_eigenvalues,
    partial_trace,
    projector,
    tensor,
)
from .rng import uniform01


class InvalidPovmError(ValueError):
    pass


@dataclass(frozen=True)
class Effect:
    label: tuple
    operator: np.ndarray


@dataclass(frozen=True)
class Povm:
    effects: tuple[Effect, ...]
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))
        for e in self.effects:
            if np.shape(e.operator) != (self.dim, self.dim):
                raise DimensionError(
                    f"effect {e.label} has shape {np.shape(e.operator)}, expected {(self.dim, self.dim)}"
                )

    @classmethod
    def from_operators(cls, operators: Sequence[np.ndarray], labels: Sequence | None = None) -> "Povm":
        ops = [as_matrix(o) for o in operators]
        if not ops:
            raise InvalidPovmError("a POVM needs at least one effect")
        labels = labels if labels is not None else [(i,) for i in range(len(ops))]
        effects = (Effect(lab if isinstance(lab, tuple) else (lab,), o) for lab, o in zip(labels, ops))
        return cls(tuple(effects), ops[0].shape[0])

    @property
    def labels(self) -> list[tuple]:
        return [e.label for e in self.effects]

    @property
    def operators(self) -> list[np.ndarray]:
        return [e.operator for e in self.effects]

    def __len__(self):
        return len(self.effects)

    def __getitem__(self, label) -> np.ndarray:
        for e in self.effects:
            if e.label == label:
                return e.operator
        raise KeyError(label)


@dataclass(frozen=True)
class PovmReport:
    completeness_deviation: float
    min_eigenvalues: list[float] = field(default_factory=list)
    hermiticity_deviation: float = 0.0
    tol: float = STRUCT_TOL

    @property
    def passed(self) -> bool:
        return (
            self.completeness_deviation <= self.tol
            and self.hermiticity_deviation <= self.tol
            and all(ev >= -self.tol for ev in self.min_eigenvalues)
        )


@dataclass(frozen=True)
class PureProgram:
    """Amplitudes of a pure program-register state in the program basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        xi = np.asarray(self.amplitudes, dtype=complex).ravel()
        if abs(np.vdot(xi, xi).real - 1) > NORM_TOL:
            raise ValueError("program amplitudes are not normalized")
        object.__setattr__(self, "amplitudes", xi)

    def density(self, program_basis: Sequence[np.ndarray]) -> np.ndarray:
        v = sum(x * np.asarray(p, dtype=complex) for x, p in zip(self.amplitudes, program_basis))
        return projector(v)


def validate_povm(povm: Povm, tol: float = STRUCT_TOL) -> PovmReport:
    total = np.zeros((povm.dim, povm.dim), dtype=complex)
    mins, herm = [], 0.0
    for e in povm.effects:
        op = e.operator
        total += op
        dev = float(np.max(np.abs(op - dagger(op))))
        herm = max(herm, dev)
        if dev > tol:
            mins.append(float("nan"))
            continue
        mins.append(float(hermitian_eigenvalues(op, tol)[0]))
    completeness = float(np.max(np.abs(total - np.eye(povm.dim))))
    # NaN min eigenvalue (non-Hermitian effect) fails the >= comparison
    return PovmReport(completeness, mins, herm, tol)


def born_probabilities(povm: Povm, rho: np.ndarray, tol: float = STRUCT_TOL) -> np.ndarray:
    """Outcome probabilities tr(A rho), in effect order."""
    rho = as_matrix(rho)
    if rho.shape != (povm.dim, povm.dim):
        raise DimensionError(f"state shape {rho.shape} does not match POVM dim {povm.dim}")
    if not check_density(rho, tol):
        raise ValueError("state is not a valid density matrix")
    p = np.array([np.trace(op @ rho).real for op in povm.operators])
    if np.any(p < -1e-12):
        raise InvalidPovmError(f"negative outcome probability {p.min():.3g}")
    return np.clip(p, 0.0, 1.0)


def _cumulative(probabilities) -> np.ndarray:
    p = np.asarray(probabilities, dtype=float)
    if p.size == 0:
        raise ValueError("empty probability list")
    s = p.sum()
    if abs(s - 1) > 1e-9:
        raise ValueError(f"probabilities sum to {s}, not 1")
    c = np.cumsum(p / s)
    c[-1] = 1.0
    return c


def sample_outcome(probabilities, state: int) -> int:
    """Inverse-CDF draw; ``state`` is a 64-bit stream word consumed by value."""
    c = _cumulative(probabilities)
    u = float(uniform01(np.uint64(state)))
    return int(np.searchsorted(c, u, side="right"))


def sample_outcomes(probabilities, states: np.ndarray) -> np.ndarray:
    """Vectorized :func:`sample_outcome` over an array of stream words."""
    c = _cumulative(probabilities)
    return np.searchsorted(c, uniform01(np.asarray(states, dtype=np.uint64)), side="right")


def _check_inputs(unitaries, bases, rho_a=None, rho_p=None):
    for b in bases:
        if not check_orthonormal(b):
            raise InvalidPovmError("measurement or program basis is not orthonormal")
    for u in unitaries:
        if not check_unitary(u)[0]:
            raise InvalidPovmError("processor operation is not unitary")
    for rho in (rho_a, rho_p):
        if rho is not None and not check_density(rho):
            raise InvalidPovmError("ancilla/program state is not a valid density matrix")


def _reduce_to_data(op: np.ndarray, rho_a: np.ndarray, d: int) -> np.ndarray:
    """sum_m <A_m| op (1 ⊗ rho_A) |A_m>, i.e. Tr_A[op (1 ⊗ rho_A)]."""
    da = rho_a.shape[0]
    return partial_trace(op @ tensor(np.eye(d), rho_a), HilbertLayout((d, da)), keep=0)


def induced_povm_general(
    unitaries: Sequence[np.ndarray],
    program_basis: Sequence[np.ndarray],
    data_basis: Sequence[np.ndarray],
    ancilla_basis: Sequence[np.ndarray],
    measured_program_basis: Sequence[np.ndarray],
    rho_a: np.ndarray,
    rho_p: np.ndarray,
) -> Povm:
    """POVM on the data register for arbitrary program and program-measurement bases.

    One effect per (i, j, k); the double sum over processor branches picks up
    the program coherences that survive the measurement of the program register.
    """
    U = [as_matrix(u) for u in unitaries]
    P = [np.asarray(p, dtype=complex) for p in program_basis]
    Pm = [np.asarray(p, dtype=complex) for p in measured_program_basis]
    rho_a, rho_p = as_matrix(rho_a), as_matrix(rho_p)
    _check_inputs(U, [data_basis, ancilla_basis, P, Pm], rho_a, rho_p)
    d, da = len(data_basis), len(ancilla_basis)
    if len(P) != len(U) or rho_p.shape[0] != len(P) or rho_a.shape[0] != da:
        raise DimensionError("processor, program and ancilla dimensions disagree")
    # <P_l|rho_P|P_n>
    rp = np.array([[np.vdot(pl, rho_p @ pn) for pn in P] for pl in P])
    # <P'_k|P_l>
    ov = np.array([[np.vdot(pk, pl) for pl in P] for pk in Pm])
    effects = []
    for i, di in enumerate(data_basis):
        for j, aj in enumerate(ancilla_basis):
            e_da = tensor(projector(di), projector(aj))
            for k in range(len(Pm)):
                acc = np.zeros((d, d), dtype=complex)
                for n in range(len(U)):
                    for l in range(len(U)):
                        w = rp[l, n] * ov[k, l] * np.conj(ov[k, n])
                        if w == 0:
                            continue
                        acc += w * _reduce_to_data(dagger(U[n]) @ e_da @ U[l], rho_a, d)
                effects.append(Effect((i, j, k), acc))
    return Povm(tuple(effects), d)


def induced_povm_matched(
    unitaries: Sequence[np.ndarray],
    program_basis: Sequence[np.ndarray],
    data_basis: Sequence[np.ndarray],
    ancilla_basis: Sequence[np.ndarray],
    rho_a: np.ndarray,
    rho_p: np.ndarray,
) -> Povm:
    """Program register measured in the encoding basis: only ρ_P's diagonal matters."""
    U = [as_matrix(u) for u in unitaries]
    P = [np.asarray(p, dtype=complex) for p in program_basis]
    rho_a, rho_p = as_matrix(rho_a), as_matrix(rho_p)
    _check_inputs(U, [data_basis, ancilla_basis, P], rho_a, rho_p)
    d = len(data_basis)
    if len(P) != len(U) or rho_p.shape[0] != len(P) or rho_a.shape[0] != len(ancilla_basis):
        raise DimensionError("processor, program and ancilla dimensions disagree")
    weights = [np.vdot(p, rho_p @ p).real for p in P]
    effects = []
    for i, di in enumerate(data_basis):
        for j, aj in enumerate(ancilla_basis):
            e_da = tensor(projector(di), projector(aj))
            for k, (u, w) in enumerate(zip(U, weights)):
                effects.append(Effect((i, j, k), w * _reduce_to_data(dagger(u) @ e_da @ u, rho_a, d)))
    return Povm(tuple(effects), d)


def induced_povm_no_ancilla(
    unitaries: Sequence[np.ndarray],
    program_basis: Sequence[np.ndarray],
    data_basis: Sequence[np.ndarray],
    rho_p: np.ndarray,
) -> Povm:
    """Data-only processor: a classical mixture of the rotated projective tests.

    Effects are labelled (i, k).
    """
    U = [as_matrix(u) for u in unitaries]
    P = [np.asarray(p, dtype=complex) for p in program_basis]
    rho_p = as_matrix(rho_p)
    _check_inputs(U, [data_basis, P], None, rho_p)
    d = len(data_basis)
    if any(u.shape != (d, d) for u in U):
        raise DimensionError("operations must act on the data register only")
    if len(P) != len(U) or rho_p.shape[0] != len(P):
        raise DimensionError("program dimension does not match the number of operations")
    weights = [np.vdot(p, rho_p @ p).real for p in P]
    effects = [
        Effect((i, k), w * (dagger(u) @ projector(di) @ u))
        for i, di in enumerate(data_basis)
        for k, (u, w) in enumerate(zip(U, weights))
    ]
    return Povm(tuple(effects), d)


def program_contraction(
    unitaries: Sequence[np.ndarray],
    xi: PureProgram,
    program_basis: Sequence[np.ndarray],
    measured_program_basis: Sequence[np.ndarray],
    data_basis: Sequence[np.ndarray] | None = None,
) -> tuple[list[np.ndarray], Povm]:
    """Operators X_k = sum_m xi_m <P'_k|P_m> U_m for a pure program, and the POVM they induce.

    The X_k are in general neither unitary nor Hermitian.
    """
    U = [as_matrix(u) for u in unitaries]
    P = [np.asarray(p, dtype=complex) for p in program_basis]
    Pm = [np.asarray(p, dtype=complex) for p in measured_program_basis]
    d = U[0].shape[0]
    data_basis = data_basis if data_basis is not None else list(np.eye(d, dtype=complex))
    _check_inputs(U, [data_basis, P, Pm])
    if len(xi.amplitudes) != len(P) or len(P) != len(U):
        raise DimensionError("program amplitudes, basis and operations disagree in count")
    X = [sum(x * np.vdot(pk, pm) * u for x, pm, u in zip(xi.amplitudes, P, U)) for pk in Pm]
    effects = [
        Effect((i, k), dagger(x) @ projector(di) @ x)
        for i, di in enumerate(data_basis)
        for k, x in enumerate(X)
    ]
    return X, Povm(tuple(effects), d)
