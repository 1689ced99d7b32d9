"""
Programmable unambiguous discriminator for the symmetric qubit pairs
α|0⟩ ± β|1⟩.

A fixed two-qubit rotation (parameter φ₀, with cos θ = tan(φ₀/2)) acts on
data ⊗ ancilla; the ancilla state a|0⟩ + b|1⟩ is the program that tunes the
device to a chosen pair. The final measurement is {P₊, P₋, P₀} with
|±⟩ = (|00⟩ ± |10⟩)/√2 and P₀ = 1 − P₊ − P₋.

Closed forms
------------
Real pairs (α = cos(φ/2), β = sin(φ/2))::

    P_succ = 2 sin²(φ/2) · R(φ, φ₀)
    R(φ, φ₀) = cos φ₀ (1 + cos φ) / (1 + cos φ₀ − sin φ sin φ₀)

Complex pairs, derived from the evolved amplitudes::

    P_succ = 2 sin²θ |αβ|² / (1 − 2 cos θ Re(α* β))

A variant with sin θ to the first power and Re(αβ) in the denominator does
not reduce to the real-pair result; it is kept only as
:func:`sin_first_power_probability` so the two can be compared numerically.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from math import atan2, cos, sin, sqrt, tan
from typing import Sequence

import numpy as np

from .multimeter import MeasurementModel, Processor
from .qcore import NORM_TOL, computational_basis, ket, projector, tensor

HALF_PI = np.pi / 2
PHI0_SNAP = 1e-12


class Unprogrammable(ValueError):
    """No ancilla state makes the device unambiguous for the requested pair."""


class Label(Enum):
    PSI1 = "psi1"
    PSI2 = "psi2"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class StatePair:
    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1) > NORM_TOL:
            raise ValueError(f"|α|² + |β|² = {abs(a) ** 2 + abs(b) ** 2!r}, expected 1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def from_phi(cls, phi: float) -> "StatePair":
        return cls(cos(phi / 2), sin(phi / 2))

    @property
    def is_real(self) -> bool:
        return self.alpha.imag == 0 and self.beta.imag == 0

    @property
    def phi(self) -> float:
        """Angle between the two states; 2·atan2(β, α) for real pairs."""
        if self.is_real:
            return 2 * atan2(self.beta.real, self.alpha.real)
        return 2 * atan2(abs(self.beta), abs(self.alpha))

    @property
    def nondegenerate(self) -> bool:
        return self.alpha != 0 and self.beta != 0

    def kets(self) -> tuple[np.ndarray, np.ndarray]:
        return ket([self.alpha, self.beta]), ket([self.alpha, -self.beta])

    def with_phase(self, phase: float) -> "StatePair":
        w = cmath.exp(1j * phase)
        return StatePair(w * self.alpha, w * self.beta)


@dataclass(frozen=True)
class DiscriminatorDesign:
    phi0: float

    def __post_init__(self):
        if not (0.0 <= self.phi0 <= HALF_PI):
            raise ValueError(f"φ₀ = {self.phi0} outside [0, π/2]")

    @property
    def orthogonal_only(self) -> bool:
        """θ = 0: float π/2 is snapped so the degenerate device is recognized."""
        return HALF_PI - self.phi0 <= PHI0_SNAP

    @property
    def cos_theta(self) -> float:
        return 1.0 if self.orthogonal_only else tan(self.phi0 / 2)

    @property
    def sin_theta(self) -> float:
        # sqrt(1 - tan²(φ₀/2)) without cancellation near φ₀ = π/2
        if self.orthogonal_only:
            return 0.0
        c0 = cos(self.phi0)
        return sqrt(2 * c0 / (1 + c0))

    @property
    def theta(self) -> float:
        return atan2(self.sin_theta, self.cos_theta)


@dataclass(frozen=True)
class AncillaProgram:
    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1) > NORM_TOL:
            raise ValueError("ancilla program is not normalized")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def ket(self) -> np.ndarray:
        return ket([self.a, self.b])


@dataclass(frozen=True)
class DiscriminationOutcome:
    """Output amplitudes on |±⟩ (signed branch and wrong branch) and |01⟩, |11⟩."""

    q: complex
    wrong: complex
    const1: complex
    const2: complex

    @property
    def success(self) -> float:
        return abs(self.q) ** 2

    @property
    def error(self) -> float:
        return abs(self.wrong) ** 2

    @property
    def inconclusive(self) -> float:
        return abs(self.const1) ** 2 + abs(self.const2) ** 2


def design_unitary(d: DiscriminatorDesign) -> np.ndarray:
    """4×4 rotation on data ⊗ ancilla; |1_D⟩ ⊗ anything is left alone."""
    c, s = d.cos_theta, d.sin_theta
    u = np.eye(4, dtype=complex)
    # columns are images of |00>, |01> (indices 0, 1 with data most significant)
    u[0, 0], u[1, 0] = c, s
    u[0, 1], u[1, 1] = -s, c
    return u


def plus_minus_states() -> tuple[np.ndarray, np.ndarray]:
    e = computational_basis(2)
    plus = (tensor(e[0], e[0]) + tensor(e[1], e[0])) / sqrt(2)
    minus = (tensor(e[0], e[0]) - tensor(e[1], e[0])) / sqrt(2)
    return plus, minus


def discrimination_projectors() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    plus, minus = plus_minus_states()
    p_plus, p_minus = projector(plus), projector(minus)
    return p_plus, p_minus, np.eye(4) - p_plus - p_minus


def outcome_map(index: int) -> Label:
    """Projector index 0 (P₊), 1 (P₋), 2 (P₀) to the identification it reports."""
    return (Label.PSI1, Label.PSI2, Label.INCONCLUSIVE)[index]


def solve_program(pair: StatePair, d: DiscriminatorDesign, tol: float = 1e-12) -> AncillaProgram:
    """Ancilla state that cancels the wrong-sign |∓⟩ amplitude; a is real ≥ 0."""
    c, s = d.cos_theta, d.sin_theta
    alpha, beta = pair.alpha, pair.beta
    if alpha == 0:
        raise Unprogrammable("α = 0: the pair is orthogonal to the device's symmetry axis")
    ratio = beta / alpha
    if s < tol:
        if abs(ratio - c) <= tol:
            return AncillaProgram(1.0, 0.0)
        raise Unprogrammable(
            f"φ₀ = π/2 discriminates only the orthogonal pair α = β = 1/√2 (got β/α = {ratio:.6g})"
        )
    b_over_a = (c - ratio) / s
    a = 1 / sqrt(1 + abs(b_over_a) ** 2)
    return AncillaProgram(a, a * b_over_a)


def evolve(pair: StatePair, d: DiscriminatorDesign, prog: AncillaProgram, sign: int = +1) -> DiscriminationOutcome:
    """Apply the design rotation to (α|0⟩ ± β|1⟩) ⊗ (a|0⟩ + b|1⟩) and read the amplitudes."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    psi = ket([pair.alpha, sign * pair.beta])
    out = design_unitary(d) @ tensor(psi, prog.ket())
    plus, minus = plus_minus_states()
    right, wrong = (plus, minus) if sign > 0 else (minus, plus)
    q = np.vdot(right, out)
    # const2 is defined relative to the ± sign on |11>
    return DiscriminationOutcome(complex(q), complex(np.vdot(wrong, out)), complex(out[1]), complex(sign * out[3]))


def ratio_R(phi: float, phi0: float) -> float:
    return cos(phi0) * (1 + cos(phi)) / (1 + cos(phi0) - sin(phi) * sin(phi0))


def optimal_probability(phi: float) -> float:
    return 2 * sin(phi / 2) ** 2


def quasiclassical_probability(phi: float) -> float:
    return 0.5 * sin(phi) ** 2


def success_probability(pair: StatePair, d: DiscriminatorDesign) -> float:
    """|q|² from the evolved state for the program that makes the device unambiguous."""
    return evolve(pair, d, solve_program(pair, d), +1).success


def general_probability(pair: StatePair, d: DiscriminatorDesign) -> float:
    """Closed form 2 sin²θ |αβ|² / (1 − 2 cos θ Re(α* β))."""
    solve_program(pair, d)
    a, b = pair.alpha, pair.beta
    denom = 1 - 2 * d.cos_theta * (a.conjugate() * b).real
    return 2 * d.sin_theta**2 * abs(a * b) ** 2 / denom


def sin_first_power_probability(pair: StatePair, d: DiscriminatorDesign) -> float:
    """Variant with sin θ (first power) and Re(αβ); kept for comparison only."""
    a, b = pair.alpha, pair.beta
    denom = 1 - 2 * d.cos_theta * (a * b).real
    return 2 * d.sin_theta * abs(a * b) ** 2 / denom


def discriminator_processor(designs: Sequence[DiscriminatorDesign] | DiscriminatorDesign) -> Processor:
    """The discriminator as a multimeter; several designs become a switched bank."""
    if isinstance(designs, DiscriminatorDesign):
        designs = [designs]
    return Processor.build([design_unitary(d) for d in designs], data_dim=2, ancilla_dim=2)


def discriminator_measurement(n_designs: int = 1) -> MeasurementModel:
    """Product refinement of {P₊, P₋, P₀}: data in the |±⟩ basis, ancilla and program computational.

    P₊ = |+⟩⟨+| ⊗ |0⟩⟨0|, P₋ = |−⟩⟨−| ⊗ |0⟩⟨0|, P₀ = 1 ⊗ |1⟩⟨1|.
    """
    e = computational_basis(2)
    data = ((e[0] + e[1]) / sqrt(2), (e[0] - e[1]) / sqrt(2))
    return MeasurementModel(data, tuple(e), tuple(computational_basis(n_designs)))


def group_outcomes(table: np.ndarray) -> np.ndarray:
    """Collapse a simulate() table over (data, ancilla, program) to [P₊, P₋, P₀] probabilities."""
    t = table.sum(axis=2)
    return np.array([t[0, 0], t[1, 0], t[0, 1] + t[1, 1]])
