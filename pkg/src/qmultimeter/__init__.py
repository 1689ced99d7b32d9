"""Programmable quantum measurement devices and a programmable unambiguous discriminator."""
from .discriminator import (
    AncillaProgram,
    DiscriminatorDesign,
    StatePair,
    Unprogrammable,
    optimal_probability,
    quasiclassical_probability,
    ratio_R,
    solve_program,
    success_probability,
)
from .optimize import DesignBank, Interval, average_ratio, best_phi0, design_bank, select_program
from .simlab import Scenario, TrialStats, compare_analytic, monte_carlo

__version__ = "0.1.0"
