"""Command line front end.

Subcommands: experiment, sweep, phase, tw-table, validate.  Every table
written gets a rendered figure next to it.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import config as cfgmod
from . import harness, plots, rmt, validate


def _parse_ratio_spec(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise SystemExit("--ratios must look like start:stop:count")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 2 or not 0 < start < stop:
        raise SystemExit("--ratios needs 0 < start < stop and count >= 2")
    return np.linspace(start, stop, count)


def _load_config(args) -> dict:
    cfg = cfgmod.parse_config_file(args.config)
    return cfgmod.apply_overrides(cfg, args.set or [])


def _print_aggregate(agg: list[dict]) -> None:
    print(f"{'initializer':<16} {'mean_acc':>9} {'max_acc':>8} "
          f"{'mean_ep':>8} {'max_ep':>7} {'runs':>5}")
    for a in agg:
        print(f"{a['initializer']:<16} {a['mean_accuracy']:>9.4f} "
              f"{a['max_accuracy']:>8.4f} {a['mean_epochs']:>8.1f} "
              f"{a['max_epochs']:>7.0f} {a['run_count']:>5d}")


def cmd_experiment(args) -> int:
    cfg = _load_config(args)
    rows, agg = harness.run_experiment(cfg, jobs=args.jobs)
    harness.write_experiment_outputs(args.out, rows, agg)
    plots.plot_experiment(agg, os.path.join(args.out, "experiment.png"))
    _print_aggregate(agg)
    failed = [r for r in rows if r["error"]]
    if failed:
        print(f"{len(failed)} run(s) failed; see runs.csv", file=sys.stderr)
    print(f"wrote {args.out}/runs.csv, aggregate.csv, experiment.png")
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    counts = [int(s) for s in args.classes.split(",") if s.strip()]
    rows, agg = harness.sweep_classes(cfg, counts, jobs=args.jobs)
    os.makedirs(args.out, exist_ok=True)
    harness.write_csv(os.path.join(args.out, "runs.csv"), harness.RUN_COLUMNS, rows)
    harness.write_csv(os.path.join(args.out, "aggregate.csv"),
                      harness.SWEEP_COLUMNS, agg)
    plots.plot_sweep(agg, os.path.join(args.out, "sweep.png"))
    _print_aggregate(agg)
    print(f"wrote {args.out}/runs.csv, aggregate.csv, sweep.png")
    return 0


def cmd_phase(args) -> int:
    n_list = [int(s) for s in args.n.split(",") if s.strip()]
    ratios = _parse_ratio_spec(args.ratios)
    sol = rmt.painleve_table(args.t_min, args.t_max, args.points)
    rows = harness.emit_phase_diagram(sol, n_list, ratios)
    os.makedirs(args.out, exist_ok=True)
    harness.write_csv(os.path.join(args.out, "phase.csv"), harness.PHASE_COLUMNS, rows)
    plots.plot_phase(rows, os.path.join(args.out, "phase.png"))
    print(f"wrote {args.out}/phase.csv, phase.png")
    return 0


def cmd_tw_table(args) -> int:
    sol = rmt.painleve_table(args.t_min, args.t_max, args.points)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "painleve_table.csv")
    rmt.save_table(sol, path)
    plots.plot_table(sol, os.path.join(args.out, "painleve_table.png"))
    print(f"wrote {path} ({len(sol.grid)} points on "
          f"[{sol.t_min:g}, {sol.t_max:g}]) and painleve_table.png")
    return 0


def cmd_validate(args) -> int:
    results, scaled, t_samples = validate.run_all(args.seed)
    os.makedirs(args.out, exist_ok=True)
    harness.write_csv(os.path.join(args.out, "validate.csv"),
                      ["check", "passed", "detail"],
                      [{"check": r.name, "passed": r.passed, "detail": r.detail}
                       for r in results])
    sol = rmt.painleve_table()
    plots.plot_semicircle_check(scaled, os.path.join(args.out, "validate_semicircle.png"))
    plots.plot_edge_check(sol, t_samples, os.path.join(args.out, "validate_edge.png"))
    all_ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        all_ok &= r.passed
        print(f"{status} {r.name}: {r.detail}")
    print(f"wrote {args.out}/validate.csv, validate_semicircle.png, validate_edge.png")
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="landscape-init",
        description="Random-matrix landscape analysis and network weight "
                    "initialization benchmarks.")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("experiment", help="train all initializers on one config")
    pe.add_argument("config")
    pe.add_argument("--set", action="append", metavar="KEY=VALUE",
                    help="override a config entry (repeatable)")
    pe.add_argument("--out", default="out")
    pe.add_argument("--jobs", type=int, default=1)
    pe.set_defaults(func=cmd_experiment)

    ps = sub.add_parser("sweep", help="repeat the experiment over class counts")
    ps.add_argument("config")
    ps.add_argument("--classes", required=True, metavar="A,B,C")
    ps.add_argument("--set", action="append", metavar="KEY=VALUE")
    ps.add_argument("--out", default="out")
    ps.add_argument("--jobs", type=int, default=1)
    ps.set_defaults(func=cmd_sweep)

    pp = sub.add_parser("phase", help="tabulate log mean minima over (n, ratio)")
    pp.add_argument("--n", default="16,64,256", metavar="A,B,C")
    pp.add_argument("--ratios", default="0.1:3.0:30", metavar="START:STOP:COUNT")
    pp.add_argument("--t-min", type=float, default=rmt.DEFAULT_T_MIN)
    pp.add_argument("--t-max", type=float, default=rmt.DEFAULT_T_MAX)
    pp.add_argument("--points", type=int, default=rmt.DEFAULT_POINTS)
    pp.add_argument("--out", default="out")
    pp.set_defaults(func=cmd_phase)

    pt = sub.add_parser("tw-table", help="dump the tabulated Painleve solution")
    pt.add_argument("--t-min", type=float, default=rmt.DEFAULT_T_MIN)
    pt.add_argument("--t-max", type=float, default=rmt.DEFAULT_T_MAX)
    pt.add_argument("--points", type=int, default=rmt.DEFAULT_POINTS)
    pt.add_argument("--out", default="out")
    pt.set_defaults(func=cmd_tw_table)

    pv = sub.add_parser("validate", help="run all brute-force oracle checks")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--out", default="out")
    pv.set_defaults(func=cmd_validate)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
