"""
Command-line front end.

    qmm sweep --phi0 pi/4 --steps 91 --out curve.csv
    qmm run scenario.json --json result.json
    qmm optimize --interval 0:pi/2 --bank 3
    qmm verify

Exit codes: 0 pass, 1 statistical failure, 2 input error, 3 unprogrammable.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from math import pi

import numpy as np

from . import discriminator as dc
from .optimize import Interval, average_ratio, best_phi0, design_bank, select_program
from .simlab import Scenario, compare_analytic, monte_carlo

EXIT_OK, EXIT_STAT_FAIL, EXIT_INPUT, EXIT_UNPROGRAMMABLE = 0, 1, 2, 3
DEFAULT_SEED = 42
SWEEP_HEADER = ["phi", "R", "p_success", "p_optimal", "p_quasiclassical"]

_ANGLE = re.compile(r"^\s*([-+]?[0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


class InputError(ValueError):
    pass


def parse_angle(text: str | float) -> float:
    """Radians from '0.785', 'pi/4', '0.25pi' or '3*pi/8'."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _ANGLE.match(text)
    try:
        if m:
            coef = float(m.group(1)) if m.group(1) not in ("", "+", "-") else float(m.group(1) + "1")
            return coef * pi / (float(m.group(2)) if m.group(2) else 1.0)
        return float(text)
    except ValueError:
        raise InputError(f"cannot parse angle {text!r}") from None


def parse_interval(text: str) -> Interval:
    try:
        lo, hi = text.split(":")
        return Interval(parse_angle(lo), parse_angle(hi))
    except ValueError as e:
        raise InputError(f"bad interval {text!r}: {e}") from None


def fmt(x: float) -> str:
    return f"{x:.9g}"


def default_seed() -> int:
    env = os.environ.get("QMM_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env, 0)
    except ValueError:
        raise InputError(f"QMM_SEED={env!r} is not an integer") from None


def _angle_key(data: dict, key: str, required: bool = True) -> float | None:
    if key in data:
        return parse_angle(data[key])
    if f"{key}_pi" in data:
        return float(data[f"{key}_pi"]) * pi
    if required:
        raise InputError(f"scenario needs '{key}' or '{key}_pi'")
    return None


def scenario_from_dict(data: dict, trials: int | None = None, seed: int | None = None) -> Scenario:
    """Build a Scenario from the flat JSON layout (angles in radians, or ``*_pi`` multiples of π)."""
    try:
        phi = _angle_key(data, "phi", required=False)
        if phi is not None:
            pair = dc.StatePair.from_phi(phi)
        elif "alpha_re" in data or "beta_re" in data:
            pair = dc.StatePair(complex(data.get("alpha_re", 0.0), data.get("alpha_im", 0.0)),
                                complex(data.get("beta_re", 0.0), data.get("beta_im", 0.0)))
        else:
            raise InputError("scenario needs 'phi', 'phi_pi' or alpha/beta amplitudes")
        design = dc.DiscriminatorDesign(_angle_key(data, "phi0"))
        program = None
        if "program" in data:
            p = data["program"]
            program = dc.AncillaProgram(complex(p.get("a_re", 0.0), p.get("a_im", 0.0)),
                                        complex(p.get("b_re", 0.0), p.get("b_im", 0.0)))
        seed = seed if seed is not None else int(data["seed"]) if "seed" in data else default_seed()
        return Scenario(
            pair=pair,
            design=design,
            program=program,
            priors=tuple(float(x) for x in data.get("priors", (0.5, 0.5))),
            trials=int(trials if trials is not None else data.get("trials", 100_000)),
            seed=seed,
        )
    except (TypeError, AttributeError) as e:
        raise InputError(f"malformed scenario: {e}") from None
    except ValueError as e:
        if isinstance(e, (InputError, dc.Unprogrammable)):
            raise
        raise InputError(str(e)) from None


def sweep_rows(phi0: float, iv: Interval, steps: int) -> list[list[float]]:
    if steps < 2:
        raise InputError("--steps must be >= 2")
    if not (0 <= phi0 < pi / 2):
        raise InputError("sweep needs phi0 in [0, pi/2)")
    design = dc.DiscriminatorDesign(phi0)
    rows = []
    for phi in np.linspace(iv.lo, iv.hi, steps):
        phi = float(phi)
        rows.append([phi, dc.ratio_R(phi, phi0), dc.success_probability(dc.StatePair.from_phi(phi), design),
                     dc.optimal_probability(phi), dc.quasiclassical_probability(phi)])
    return rows


def write_sweep(rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def cmd_sweep(args) -> int:
    rows = sweep_rows(parse_angle(args.phi0), parse_interval(args.interval), args.steps)
    if args.out:
        try:
            with open(args.out, "w", newline="", encoding="utf-8") as f:
                write_sweep(rows, f)
        except OSError as e:
            raise InputError(f"cannot write {args.out}: {e}") from None
    else:
        write_sweep(rows, sys.stdout)
    return EXIT_OK


def cmd_run(args) -> int:
    try:
        with open(args.scenario, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read scenario {args.scenario}: {e}") from None
    if not isinstance(data, dict):
        raise InputError("scenario must be a JSON object")
    s = scenario_from_dict(data, args.trials, args.seed)
    result: dict = {}
    if args.bank:
        bank = design_bank(args.bank, parse_interval(args.interval))
        idx, prog = select_program(bank, s.pair, args.select_rule)
        s = Scenario(s.pair, bank.designs[idx], prog, s.priors, s.trials, s.seed)
        result["bank"] = {"phi0": bank.phis, "selected": idx, "rule": args.select_rule}
    design = s.design
    prog = s.resolved_program()
    p_success = dc.evolve(s.pair, design, prog, +1).success
    stats = monte_carlo(s, workers=args.workers)
    cmp = compare_analytic(stats, p_success)
    result.update({
        "pair": {"alpha": [s.pair.alpha.real, s.pair.alpha.imag], "beta": [s.pair.beta.real, s.pair.beta.imag],
                 "phi": s.pair.phi},
        "phi0": design.phi0,
        "program": {"a": [prog.a.real, prog.a.imag], "b": [prog.b.real, prog.b.imag]},
        "p_success": p_success,
        "p_optimal": dc.optimal_probability(s.pair.phi),
        "stats": stats.as_dict(),
        "comparison": cmp.as_dict(),
    })
    print(f"pair      phi = {fmt(s.pair.phi)} rad ({fmt(s.pair.phi / pi)} pi)")
    print(f"design    phi0 = {fmt(design.phi0)} rad ({fmt(design.phi0 / pi)} pi)")
    if args.bank:
        print(f"bank      {', '.join(fmt(p) for p in result['bank']['phi0'])}; selected #{result['bank']['selected']}")
    print(f"program   a = {fmt(prog.a.real)}{prog.a.imag:+.9g}j  b = {fmt(prog.b.real)}{prog.b.imag:+.9g}j")
    print(f"analytic  p_success = {fmt(p_success)}")
    print(f"monte     trials = {stats.trials}  seed = {stats.seed}  successes = {stats.successes}  "
          f"errors = {stats.errors}  inconclusive = {stats.inconclusive}")
    print(f"compare   frequency = {fmt(cmp.frequency)}  z = {cmp.z:.3f}  -> {'PASS' if cmp.passed else 'FAIL'}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            json.dump(result, f, indent=2)
            f.write("\n")
    return EXIT_OK if cmp.passed else EXIT_STAT_FAIL


def cmd_optimize(args) -> int:
    iv = parse_interval(args.interval)
    x, avg = best_phi0(iv)
    out = {"interval": [iv.lo, iv.hi], "phi0": x, "average_R": avg}
    print(f"phi0* = {fmt(x)} rad ({fmt(x / pi)} pi), average R = {fmt(avg)}")
    if args.bank:
        bank = design_bank(args.bank, iv)
        segs = iv.split(args.bank)
        out["bank"] = []
        for i, (d, seg) in enumerate(zip(bank.designs, segs)):
            seg_avg, single = average_ratio(d.phi0, seg), average_ratio(x, seg)
            out["bank"].append({"phi0": d.phi0, "segment": [seg.lo, seg.hi], "average_R": seg_avg,
                                "single_design_average_R": single})
            print(f"  design {i}: phi0 = {fmt(d.phi0)} ({fmt(d.phi0 / pi)} pi) on [{fmt(seg.lo)}, {fmt(seg.hi)}]"
                  f"  average R = {fmt(seg_avg)} (single design {fmt(single)})")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            json.dump(out, f, indent=2)
            f.write("\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import as_json, run_all

    seed = args.seed if args.seed is not None else default_seed()
    checks = run_all(trials=args.trials or 1_000_000, seed=seed)
    for c in checks:
        print(c.line())
    gen = next(c for c in checks if c.name.startswith("general complex"))
    print("general complex formula: oracle vs 2 sin^2(theta)|ab|^2/(1-2cos(theta)Re(a* b)) "
          f"max dev {fmt(gen.detail['complex_oracle_vs_derived_sin2theta_max_dev'])}; "
          f"vs 2 sin(theta)|ab|^2/(1-2cos(theta)Re(ab)) max dev "
          f"{fmt(gen.detail['complex_oracle_vs_sintheta_variant_max_dev'])}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            json.dump(as_json(checks), f, indent=2)
            f.write("\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_STAT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmm", description="Programmable unambiguous discriminator toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="CSV of R and success probabilities against phi")
    p.add_argument("--phi0", default="pi/4")
    p.add_argument("--interval", default="0:pi/2")
    p.add_argument("--steps", type=int, default=91)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("run", help="Monte Carlo run of a JSON scenario")
    p.add_argument("scenario")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--json")
    p.add_argument("--bank", type=int, help="switch between K designs optimized on --interval")
    p.add_argument("--interval", default="0:pi/2")
    p.add_argument("--select-rule", choices=["argmax-r", "nearest-phi"], default="argmax-r")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("optimize", help="best phi0 for an interval of pair angles")
    p.add_argument("--interval", default="0:pi/2")
    p.add_argument("--bank", type=int)
    p.add_argument("--json")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--json")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except dc.Unprogrammable as e:
        print(f"unprogrammable: {e}", file=sys.stderr)
        return EXIT_UNPROGRAMMABLE
    except (InputError, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
