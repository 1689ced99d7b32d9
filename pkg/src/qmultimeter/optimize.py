"""
Choosing the device parameter φ₀: average of R(φ, φ₀) over a window of pair
angles, 1-D maximization over φ₀, and banks of designs switched by a program
register.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable, Literal

import numpy as np

from .discriminator import (
    HALF_PI,
    AncillaProgram,
    DiscriminatorDesign,
    StatePair,
    Unprogrammable,
    solve_program,
    success_probability,
)

INV_PHI = (sqrt(5) - 1) / 2
# keeps R's denominator away from 0/0 at (φ, φ₀) = (π/2, π/2)
PHI0_MAX = HALF_PI - 1e-9
SelectRule = Literal["argmax-r", "nearest-phi"]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi <= HALF_PI + 1e-15):
            raise ValueError(f"interval ({self.lo}, {self.hi}) must satisfy 0 <= lo < hi <= π/2")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def split(self, k: int) -> list["Interval"]:
        edges = np.linspace(self.lo, self.hi, k + 1)
        return [Interval(float(a), float(b)) for a, b in zip(edges[:-1], edges[1:])]


@dataclass(frozen=True)
class DesignBank:
    designs: tuple[DiscriminatorDesign, ...]

    def __post_init__(self):
        object.__setattr__(self, "designs", tuple(self.designs))
        phis = self.phis
        if not phis:
            raise ValueError("empty design bank")
        if any(not (0 < p <= HALF_PI) for p in phis):
            raise ValueError("bank designs must have φ₀ in (0, π/2]")
        if any(b <= a for a, b in zip(phis, phis[1:])):
            raise ValueError("bank designs must be strictly increasing in φ₀")

    @classmethod
    def from_phis(cls, phis) -> "DesignBank":
        return cls(tuple(DiscriminatorDesign(float(p)) for p in phis))

    @property
    def phis(self) -> list[float]:
        return [d.phi0 for d in self.designs]

    def __len__(self):
        return len(self.designs)


def simpson(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, n: int) -> float:
    """Composite Simpson rule on n (rounded up to even) subintervals; ``f`` is vectorized."""
    n += n % 2
    x = np.linspace(lo, hi, n + 1)
    y = f(x)
    h = (hi - lo) / n
    return float(h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum()))


def ratio_R_array(phi: np.ndarray, phi0: float) -> np.ndarray:
    return np.cos(phi0) * (1 + np.cos(phi)) / (1 + np.cos(phi0) - np.sin(phi) * np.sin(phi0))


def average_ratio(phi0: float, iv: Interval, n: int = 1024) -> float:
    """Mean of R(φ, φ₀) over φ in ``iv``."""
    if n < 16:
        raise ValueError("use at least 16 subintervals")
    return simpson(lambda x: ratio_R_array(x, phi0), iv.lo, iv.hi, n) / iv.width


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-7) -> float:
    """Maximizer of a unimodal f on [a, b], to within ``tol``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (a + b) / 2


def best_phi0(iv: Interval, n: int = 1024, scan_points: int = 64, tol: float = 1e-7) -> tuple[float, float]:
    """(φ₀*, average R) maximizing the mean ratio over ``iv``."""
    grid = np.linspace(0.0, PHI0_MAX, scan_points)
    vals = [average_ratio(float(g), iv, n) for g in grid]
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, scan_points - 1)]
    x = golden_section_max(lambda p: average_ratio(p, iv, n), float(lo), float(hi), tol)
    return x, average_ratio(x, iv, n)


def design_bank(k: int, iv: Interval, n: int = 1024) -> DesignBank:
    """One design per equal sub-window of ``iv``, each optimal for its own window."""
    if k < 1:
        raise ValueError("bank size must be >= 1")
    return DesignBank.from_phis([best_phi0(seg, n)[0] for seg in iv.split(k)])


def select_program(bank: DesignBank, pair: StatePair, rule: SelectRule = "argmax-r") -> tuple[int, AncillaProgram]:
    """Pick the bank entry for ``pair`` and the ancilla program that tunes it.

    ``argmax-r`` takes the design with the largest success probability (the
    largest R for real pairs); ``nearest-phi`` takes the design whose φ₀ is
    closest to the pair angle. Ties go to the smaller index. Designs that
    cannot be programmed for the pair are skipped.
    """
    best, best_score = None, None
    for i, d in enumerate(bank.designs):
        try:
            solve_program(pair, d)
        except Unprogrammable:
            continue
        if rule == "argmax-r":
            score = success_probability(pair, d)
        elif rule == "nearest-phi":
            score = -abs(pair.phi - d.phi0)
        else:
            raise ValueError(f"unknown selection rule {rule!r}")
        if best_score is None or score > best_score:
            best, best_score = i, score
    if best is None:
        raise Unprogrammable("no design in the bank can be programmed for this pair")
    return best, solve_program(pair, bank.designs[best])

