"""
Seeded Monte Carlo runs of the discriminator.

Outcome distributions come from the full-state simulation of the device;
each trial draws its input state and its outcome from two words of a
counter-based stream keyed by (seed, trial index), so results do not depend
on how trials are chunked or distributed.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import sqrt
from typing import Sequence

import numpy as np

from .discriminator import (
    AncillaProgram,
    DiscriminatorDesign,
    Label,
    StatePair,
    discriminator_measurement,
    discriminator_processor,
    group_outcomes,
    solve_program,
)
from .multimeter import simulate_pure
from .povm import sample_outcomes
from .rng import stream_words

OUTCOMES = (Label.PSI1, Label.PSI2, Label.INCONCLUSIVE)
_SALT_INPUT, _SALT_OUTCOME = 1, 2


@dataclass(frozen=True)
class Scenario:
    pair: StatePair
    design: DiscriminatorDesign
    program: AncillaProgram | None = None  # None: solve for the pair
    priors: tuple[float, float] = (0.5, 0.5)
    trials: int = 100_000
    seed: int = 42

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if len(self.priors) != 2 or min(self.priors) < 0 or abs(sum(self.priors) - 1) > 1e-12:
            raise ValueError(f"priors {self.priors} must be two nonnegative numbers summing to 1")

    def resolved_program(self) -> AncillaProgram:
        return self.program if self.program is not None else solve_program(self.pair, self.design)


@dataclass
class TrialStats:
    """counts[s, o]: input state s (0 = ψ₁, 1 = ψ₂) reported as outcome o (ψ₁, ψ₂, inconclusive)."""

    counts: np.ndarray
    seed: int
    trials: int
    program: AncillaProgram | None = field(default=None, compare=False)

    @property
    def successes(self) -> int:
        return int(self.counts[0, 0] + self.counts[1, 1])

    @property
    def errors(self) -> int:
        return int(self.counts[0, 1] + self.counts[1, 0])

    @property
    def inconclusive(self) -> int:
        return int(self.counts[:, 2].sum())

    @property
    def success_frequency(self) -> float:
        return self.successes / self.trials

    def __eq__(self, other):
        return (
            isinstance(other, TrialStats)
            and self.seed == other.seed
            and self.trials == other.trials
            and np.array_equal(self.counts, other.counts)
        )

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "counts": {
                src.value: {o.value: int(c) for o, c in zip(OUTCOMES, row)}
                for src, row in zip((Label.PSI1, Label.PSI2), self.counts)
            },
            "successes": self.successes,
            "errors": self.errors,
            "inconclusive": self.inconclusive,
        }


@dataclass(frozen=True)
class Comparison:
    frequency: float
    expected: float
    sigma: float
    z: float
    errors: int
    passed: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def outcome_distributions(pair: StatePair, design: DiscriminatorDesign, program: AncillaProgram) -> np.ndarray:
    """Rows: input ψ₁, ψ₂; columns: P₊, P₋, P₀ probabilities from the full-state oracle."""
    proc, meas = discriminator_processor(design), discriminator_measurement()
    rows = []
    for psi in pair.kets():
        p = group_outcomes(simulate_pure(proc, meas, psi, program.ket(), np.ones(1)))
        rows.append(p / p.sum())
    return np.array(rows)


def _run_chunk(dist: np.ndarray, priors: Sequence[float], seed: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.uint64)
    src = sample_outcomes(priors, stream_words(seed, idx, _SALT_INPUT))
    counts = np.zeros((2, 3), dtype=np.int64)
    words = stream_words(seed, idx, _SALT_OUTCOME)
    for s in (0, 1):
        mask = src == s
        out = sample_outcomes(dist[s], words[mask])
        counts[s] += np.bincount(out, minlength=3)[:3]
    return counts


def monte_carlo(s: Scenario, workers: int = 1, chunk: int = 250_000) -> TrialStats:
    program = s.resolved_program()
    dist = outcome_distributions(s.pair, s.design, program)
    bounds = [(a, min(a + chunk, s.trials)) for a in range(0, s.trials, chunk)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda b: _run_chunk(dist, s.priors, s.seed, *b), bounds))
    else:
        parts = [_run_chunk(dist, s.priors, s.seed, *b) for b in bounds]
    return TrialStats(sum(parts), s.seed, s.trials, program)


def compare_analytic(stats: TrialStats, p_success: float, n_sigma: float = 4.0) -> Comparison:
    if stats.trials < 1:
        raise ValueError("no trials to compare")
    freq = stats.success_frequency
    sigma = sqrt(p_success * (1 - p_success) / stats.trials)
    diff = freq - p_success
    if sigma > 0:
        z = diff / sigma
        within = abs(diff) <= n_sigma * sigma
    else:
        z = 0.0 if diff == 0 else float("inf") * np.sign(diff)
        within = diff == 0
    return Comparison(freq, p_success, sigma, float(z), stats.errors, bool(within and stats.errors == 0))
