"""Acceptance criteria, one test each.

Every test records a ``[PASS]``/``[FAIL]`` line; the lines are printed in the
pytest terminal summary, and ``python tests/test_acceptance.py`` prints them
directly.
"""
import time
from math import pi

import numpy as np
import pytest

from qmultimeter import discriminator as dc
from qmultimeter.instances import CONSTRUCTIONS, compare
from qmultimeter.multimeter import spin_axis_bank
from qmultimeter.optimize import Interval, best_phi0
from qmultimeter.povm import induced_povm_no_ancilla
from qmultimeter.qcore import computational_basis, projector
from qmultimeter.simlab import Scenario, monte_carlo
from qmultimeter.verify import general_formula_comparison

RESULTS: list[str] = []
GRID = (np.arange(1000) + 0.5) / 1000 * (pi / 2)


def record(number, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


def criterion_1():
    t0 = time.perf_counter()
    phi0, avg = best_phi0(Interval(0.0, pi / 2))
    secs = time.perf_counter() - t0
    ok = abs(phi0 / pi - 0.235) <= 0.005 and abs(avg - 0.92) <= 0.01 and secs < 5
    return record(1, "phi0 optimization", ok, f"phi0*={phi0 / pi:.6f}pi, average R={avg:.6f}, {secs:.2f}s")


def criterion_2():
    d = dc.DiscriminatorDesign(0.0)
    dev = max(abs(dc.success_probability(dc.StatePair.from_phi(p), d) - 0.5 * np.sin(p) ** 2) for p in GRID)
    return record(2, "quasi-classical limit", dev <= 1e-10, f"max dev {dev:.2e} over {len(GRID)} angles")


def criterion_3():
    r_dev = max(abs(dc.ratio_R(p, p) - 1) for p in GRID)
    p_dev = max(abs(dc.success_probability(dc.StatePair.from_phi(p), dc.DiscriminatorDesign(p))
                    - 2 * np.sin(p / 2) ** 2) for p in GRID)
    ok = r_dev <= 1e-12 and p_dev <= 1e-12
    return record(3, "design-point optimality", ok, f"R dev {r_dev:.2e}, P dev {p_dev:.2e}")


def criterion_4():
    t0 = time.perf_counter()
    stats = monte_carlo(Scenario(dc.StatePair.from_phi(pi / 3), dc.DiscriminatorDesign(pi / 4),
                                 trials=1_000_000, seed=42))
    secs = time.perf_counter() - t0
    freq = stats.success_frequency
    ok = stats.errors == 0 and abs(freq - 0.4844371) <= 0.0015 and secs < 30
    return record(4, "unambiguity certification", ok,
                  f"errors={stats.errors}, frequency={freq:.6f}, {stats.trials} trials, {secs:.2f}s")


def criterion_5():
    worst, valid = 0.0, True
    for kind in CONSTRUCTIONS:
        for seed in range(100):
            dev, rep = compare(seed, kind)
            worst, valid = max(worst, dev), valid and rep.passed
    ok = valid and worst <= 1e-10
    return record(5, "POVM oracle equivalence", ok,
                  f"max |p_povm - p_full| {worst:.2e}, all POVMs valid={valid}, 4 x 100 instances")


def criterion_6():
    r_end = dc.ratio_R(pi / 2, pi / 4)
    phis = np.linspace(0, pi / 2, 1001)
    ra = np.array([dc.ratio_R(p, 0.0) for p in phis])
    rb = np.array([dc.ratio_R(p, pi / 4) for p in phis])
    dev_a = float(np.max(np.abs(ra - (1 + np.cos(phis)) / 2)))
    qualitative = bool(rb[1] < ra[1] and rb[500] > ra[500] and np.all(rb[phis != pi / 4] < 1))
    ok = abs(r_end - 0.707106781) <= 1e-8 and dev_a <= 1e-10 and qualitative
    return record(6, "ratio curve endpoints", ok,
                  f"R(pi/2, pi/4)={r_end:.9f}, curve A dev {dev_a:.2e}, B below A at small phi={qualitative}")


def criterion_7():
    rep = general_formula_comparison(1000)
    ok = (rep["real_pairs_oracle_vs_R_form_max_dev"] <= 1e-12
          and rep["complex_oracle_vs_derived_sin2theta_max_dev"] <= 1e-12)
    return record(7, "general complex formula", ok,
                  f"real vs R form {rep['real_pairs_oracle_vs_R_form_max_dev']:.2e}, "
                  f"sin^2 form {rep['complex_oracle_vs_derived_sin2theta_max_dev']:.2e}, "
                  f"first-power sin variant {rep['complex_oracle_vs_sintheta_variant_max_dev']:.3f}")


def criterion_8():
    bank = spin_axis_bank()
    povm = induced_povm_no_ancilla(bank.unitaries, bank.program_basis, computational_basis(2), np.eye(3) / 3)
    s = 1 / np.sqrt(2)
    axes = {0: computational_basis(2), 1: [np.array([s, s]), np.array([s, -s])],
            2: [np.array([s, 1j * s]), np.array([s, -1j * s])]}
    dev = max(float(np.max(np.abs(povm[(i, k)] - projector(axes[k][i]) / 3))) for i in range(2) for k in range(3))
    return record(8, "spin-axis multimeter", dev <= 1e-12 and len(povm) == 6, f"max dev {dev:.2e}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
