"""Property checks behind ``qmm verify``; each returns a :class:`Check`."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from math import pi

import numpy as np

from . import discriminator as dc
from .instances import CONSTRUCTIONS, compare
from .multimeter import spin_axis_bank
from .optimize import Interval, best_phi0
from .povm import induced_povm_no_ancilla
from .qcore import computational_basis, projector
from .simlab import Scenario, compare_analytic, monte_carlo


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        extras = ", ".join(f"{k}={_fmt(v)}" for k, v in self.detail.items() if not isinstance(v, (list, dict)))
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name} ({extras}; {self.seconds:.2f}s)"


def _fmt(v):
    return f"{v:.9g}" if isinstance(v, float) else str(v)


def _timed(fn):
    def run(*args, **kw):
        t0 = time.perf_counter()
        c = fn(*args, **kw)
        c.seconds = time.perf_counter() - t0
        return c

    run.__name__ = fn.__name__
    return run


def interior_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """n points strictly inside (lo, hi)."""
    return lo + (hi - lo) * (np.arange(n) + 0.5) / n


@_timed
def check_optimum() -> Check:
    x, avg = best_phi0(Interval(0.0, pi / 2))
    ok = abs(x / pi - 0.235) <= 0.005 and abs(avg - 0.92) <= 0.01
    return Check("phi0 optimum over (0, pi/2)", ok, {"phi0_over_pi": x / pi, "average_R": avg})


@_timed
def check_quasiclassical(n: int = 1000) -> Check:
    d = dc.DiscriminatorDesign(0.0)
    dev = max(abs(dc.success_probability(dc.StatePair.from_phi(p), d) - dc.quasiclassical_probability(p))
              for p in interior_grid(0, pi / 2, n))
    return Check("quasi-classical limit phi0=0", dev <= 1e-10, {"max_dev": dev, "points": n})


@_timed
def check_design_point(n: int = 1000) -> Check:
    r_dev = p_dev = 0.0
    for p0 in interior_grid(0, pi / 2, n):
        r_dev = max(r_dev, abs(dc.ratio_R(p0, p0) - 1))
        p_dev = max(p_dev, abs(dc.success_probability(dc.StatePair.from_phi(p0), dc.DiscriminatorDesign(p0))
                               - dc.optimal_probability(p0)))
    return Check("design-point optimality", r_dev <= 1e-12 and p_dev <= 1e-12,
                 {"max_R_dev": r_dev, "max_P_dev": p_dev, "points": n})


@_timed
def check_monte_carlo(trials: int = 1_000_000, seed: int = 42) -> Check:
    pair, design = dc.StatePair.from_phi(pi / 3), dc.DiscriminatorDesign(pi / 4)
    p = dc.success_probability(pair, design)
    stats = monte_carlo(Scenario(pair, design, trials=trials, seed=seed))
    cmp = compare_analytic(stats, p)
    band = 0.0015 * (1_000_000 / trials) ** 0.5
    ok = stats.errors == 0 and abs(stats.success_frequency - p) <= band
    return Check("Monte Carlo unambiguity (pi/3, pi/4)", ok,
                 {"trials": trials, "seed": seed, "errors": stats.errors, "frequency": stats.success_frequency,
                  "p_success": p, "z": cmp.z})


@_timed
def check_povm_oracle(instances: int = 100) -> Check:
    detail, ok = {}, True
    for kind in CONSTRUCTIONS:
        worst, valid = 0.0, True
        for seed in range(instances):
            dev, rep = compare(seed, kind)
            worst, valid = max(worst, dev), valid and rep.passed
        detail[f"{kind}_max_dev"] = worst
        ok = ok and valid and worst <= 1e-10
    return Check("induced POVMs vs full-state oracle", ok, detail)


@_timed
def check_ratio_curves(steps: int = 1001) -> Check:
    r_end = dc.ratio_R(pi / 2, pi / 4)
    dev_a = max(abs(dc.ratio_R(p, 0.0) - (1 + np.cos(p)) / 2) for p in np.linspace(0, pi / 2, steps))
    phis = np.linspace(0, pi / 2, steps)
    rb = np.array([dc.ratio_R(p, pi / 4) for p in phis])
    ra = (1 + np.cos(phis)) / 2
    # curve B sits above A around its design point and falls below it at small phi
    crosses = bool(rb[np.argmin(abs(phis - pi / 4))] > ra[np.argmin(abs(phis - pi / 4))] and rb[1] < ra[1])
    ok = abs(r_end - 0.707106781) <= 1e-8 and dev_a <= 1e-10 and crosses and r_end < 1
    return Check("ratio curves A (phi0=0) and B (phi0=pi/4)", ok,
                 {"R_pi2_pi4": r_end, "curveA_max_dev": dev_a, "B_below_A_small_phi": crosses})


def general_formula_comparison(n: int = 1000, seed: int = 7) -> dict:
    """Oracle vs the derived sin²θ closed form vs the first-power sin θ variant."""
    rng = np.random.default_rng(seed)
    real_dev = 0.0
    for p in interior_grid(0, pi, 32):
        for p0 in interior_grid(0, pi / 2, max(n // 32, 1)):
            pair, d = dc.StatePair.from_phi(p), dc.DiscriminatorDesign(p0)
            real_dev = max(real_dev, abs(dc.success_probability(pair, d) - dc.optimal_probability(p) * dc.ratio_R(p, p0)))
    derived_dev, variant_dev = 0.0, 0.0
    variant_real = 0.0
    for _ in range(n):
        mag = rng.uniform(0.05, 0.95)
        pair = dc.StatePair(np.sqrt(1 - mag**2) * np.exp(1j * rng.uniform(0, 2 * pi)), mag * np.exp(1j * rng.uniform(0, 2 * pi)))
        d = dc.DiscriminatorDesign(rng.uniform(0.01, pi / 2 - 0.01))
        oracle = dc.success_probability(pair, d)
        derived_dev = max(derived_dev, abs(dc.general_probability(pair, d) - oracle))
        variant_dev = max(variant_dev, abs(dc.sin_first_power_probability(pair, d) - oracle))
    for p in interior_grid(0, pi, 32):
        pair, d = dc.StatePair.from_phi(p), dc.DiscriminatorDesign(pi / 4)
        variant_real = max(variant_real, abs(dc.sin_first_power_probability(pair, d) - dc.success_probability(pair, d)))
    return {
        "real_pairs_oracle_vs_R_form_max_dev": real_dev,
        "complex_oracle_vs_derived_sin2theta_max_dev": derived_dev,
        "complex_oracle_vs_sintheta_variant_max_dev": variant_dev,
        "real_oracle_vs_sintheta_variant_max_dev": variant_real,
        "samples": n,
    }


@_timed
def check_general_formula(n: int = 1000) -> Check:
    rep = general_formula_comparison(n)
    ok = (rep["real_pairs_oracle_vs_R_form_max_dev"] <= 1e-12
          and rep["complex_oracle_vs_derived_sin2theta_max_dev"] <= 1e-12)
    rep["variant_reproduces_oracle"] = rep["complex_oracle_vs_sintheta_variant_max_dev"] <= 1e-12
    return Check("general complex formula adjudication", ok, rep)


def spin_axis_expected() -> list[np.ndarray]:
    """⅓ × z, x, y eigenprojectors in the (i, k) label order of the induced POVM."""
    s = 1 / np.sqrt(2)
    axes = [computational_basis(2), [np.array([s, s]), np.array([s, -s])],
            [np.array([s, 1j * s]), np.array([s, -1j * s])]]
    return [projector(axes[k][i]) / 3 for i in range(2) for k in range(3)]


@_timed
def check_spin_axis() -> Check:
    bank = spin_axis_bank()
    povm = induced_povm_no_ancilla(bank.unitaries, bank.program_basis, computational_basis(2), np.eye(3) / 3)
    dev = max(float(np.max(np.abs(a - b))) for a, b in zip(povm.operators, spin_axis_expected()))
    return Check("spin-axis multimeter", dev <= 1e-12, {"max_dev": dev})


def run_all(trials: int = 1_000_000, seed: int = 42) -> list[Check]:
    return [
        check_optimum(),
        check_quasiclassical(),
        check_design_point(),
        check_monte_carlo(trials, seed),
        check_povm_oracle(),
        check_ratio_curves(),
        check_general_formula(),
        check_spin_axis(),
    ]


def as_json(checks: list[Check]) -> list[dict]:
    return [asdict(c) for c in checks]
