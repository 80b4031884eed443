"""Experiment harness: wires data -> initialization -> training ->
evaluation, repeats runs over initializers, and aggregates mean/max
statistics into CSV tables.  All randomness is derived from one master
seed so identical configs reproduce identical bytes."""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import replace

import numpy as np

from . import config as cfgmod
from . import data as datamod
from .landscape import mean_minima
from .network import (Network, StopRule, evaluate, nguyen_widrow_init, one_hot,
                      train, xavier_init)
from .rmt import PainleveSolution, painleve_table
from .rmt_init import InitConfig, init_network
from .seeds import derive_seed

RUN_COLUMNS = ["class_count", "initializer", "run_index", "seed", "accuracy",
               "epochs", "final_error", "converged", "stop_reason", "error"]
AGG_COLUMNS = ["class_count", "initializer", "mean_accuracy", "max_accuracy",
               "mean_epochs", "max_epochs", "run_count"]


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(float(v), ".17g")
    return str(v)


def write_csv(path: str, columns: list[str], rows: list[dict]) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row.get(c, "")) for c in columns) + "\n")


def build_dataset(cfg: dict) -> datamod.LabeledDataset:
    kind = cfgmod.get_str(cfg, "dataset.kind")
    if kind == "synthetic":
        return datamod.synth_generate(cfgmod.get_int(cfg, "synth.classes"),
                                      cfgmod.get_int(cfg, "synth.dim"),
                                      cfgmod.get_int(cfg, "synth.per_class"),
                                      cfgmod.get_float(cfg, "synth.separation"),
                                      seed=derive_seed(cfgmod.get_int(cfg, "seed"), "synth"))
    if kind == "directory":
        return datamod.load_directory(cfgmod.get_str(cfg, "dataset.path"),
                                      cfgmod.get_str(cfg, "dataset.format"))
    raise ValueError(f"unknown dataset.kind {kind!r}")


def prepare_splits(cfg: dict, ds: datamod.LabeledDataset):
    """Split, reduce and standardize; test data only ever sees transforms
    fitted per the pca.fit_on policy (train statistics by default)."""
    master = cfgmod.get_int(cfg, "seed")
    train_ds, test_ds = datamod.split(ds, cfgmod.get_float(cfg, "split.train_fraction"),
                                      seed=derive_seed(master, "split"))
    k = cfgmod.get_int(cfg, "pca.k")
    fit_on = cfgmod.get_str(cfg, "pca.fit_on")
    if fit_on == "all":
        basis = datamod.fit_pca(ds, k)
    elif fit_on == "train":
        basis = datamod.fit_pca(train_ds, k)
    else:
        raise ValueError("pca.fit_on must be train or all")
    train_p = datamod.project(basis, train_ds)
    test_p = datamod.project(basis, test_ds)
    mean, std = datamod.standardizer_stats(train_p)
    return datamod.standardize(train_p, mean, std), datamod.standardize(test_p, mean, std)


def _initial_layers(name: str, widths: list[int], fan_in: int, run_seed: int,
                    rmt_layers) -> tuple:
    if name == "rmt":
        return rmt_layers
    dims = [fan_in] + list(widths)
    shapes = list(zip(dims[:-1], dims[1:]))
    if name == "nguyen_widrow":
        return tuple(nguyen_widrow_init(s, derive_seed(run_seed, "w", i))
                     for i, s in enumerate(shapes))
    if name == "xavier":
        return tuple(xavier_init(s, derive_seed(run_seed, "w", i))
                     for i, s in enumerate(shapes))
    raise ValueError(f"unknown initializer {name!r}")


def _run_one(args) -> dict:
    (name, run_index, layers, x_tr, t_tr, x_te, y_te, method, stop_tuple,
     train_seed, class_count) = args
    row = {"class_count": class_count, "initializer": name, "run_index": run_index,
           "seed": train_seed, "accuracy": "", "epochs": "", "final_error": "",
           "converged": "", "stop_reason": "", "error": ""}
    try:
        net = Network(layers=layers)
        stop = StopRule(*stop_tuple)
        trained, report = train(net, x_tr, t_tr, method=method, stop=stop,
                                seed=train_seed, initializer=name)
        report = replace(report, accuracy=evaluate(trained, x_te, y_te))
        row.update(accuracy=report.accuracy, epochs=report.epochs,
                   final_error=report.final_error, converged=report.converged,
                   stop_reason=report.stop_reason)
    except Exception as exc:  # noqa: BLE001 - failed runs are data, not crashes
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_experiment(cfg: dict, sol: PainleveSolution = None,
                   jobs: int = 1) -> tuple[list[dict], list[dict]]:
    """Per-run rows and aggregate rows for one experiment config."""
    if sol is None:
        sol = painleve_table(cfgmod.get_float(cfg, "table.t_min"),
                             cfgmod.get_float(cfg, "table.t_max"),
                             cfgmod.get_int(cfg, "table.points"))
    ds = build_dataset(cfg)
    return _run_on_dataset(cfg, sol, ds, jobs)


def _run_on_dataset(cfg, sol, ds, jobs=1):
    master = cfgmod.get_int(cfg, "seed")
    train_ds, test_ds = prepare_splits(cfg, ds)
    widths = cfgmod.get_int_list(cfg, "layer_widths")
    if widths[-1] != ds.class_count:
        raise ValueError("last layer width must equal the class count")
    initializers = cfgmod.get_str_list(cfg, "initializers")
    runs = cfgmod.get_int(cfg, "runs_per_initializer")
    if runs < 1:
        raise ValueError("runs_per_initializer must be >= 1")
    method = cfgmod.get_str(cfg, "trainer.method")
    stop_tuple = (cfgmod.get_float(cfg, "stop.goal"),
                  cfgmod.get_int(cfg, "stop.max_epochs"),
                  cfgmod.get_float(cfg, "stop.grad_tol"))

    targets = one_hot(train_ds.labels, ds.class_count)

    rmt_layers = None
    if "rmt" in initializers:
        init_cfg = InitConfig(mode=cfgmod.get_str(cfg, "init.mode"),
                              ratio_policy=cfgmod.get_str(cfg, "init.ratio_policy"),
                              ratio_grid=cfgmod.get_ratio_grid(cfg),
                              seed=cfgmod.get_int(cfg, "init.seed"))
        # Deterministic given data and config, so computed once per experiment.
        inits = init_network(sol, train_ds.features, train_ds.labels, widths, init_cfg)
        rmt_layers = tuple(li.weight_matrix for li in inits)

    tasks = []
    for name in initializers:
        for r in range(runs):
            run_seed = derive_seed(master, name, r)
            layers = _initial_layers(name, widths, train_ds.features.shape[1],
                                     run_seed, rmt_layers)
            tasks.append((name, r, layers, train_ds.features, targets,
                          test_ds.features, test_ds.labels, method, stop_tuple,
                          derive_seed(master, name, r, "train"), ds.class_count))

    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_one, tasks))
    else:
        rows = [_run_one(t) for t in tasks]

    agg = aggregate_rows(rows, initializers, runs_expected=runs)
    return rows, agg


def aggregate_rows(rows: list[dict], initializers: list[str],
                   runs_expected: int = None) -> list[dict]:
    agg = []
    for name in initializers:
        ok = [r for r in rows if r["initializer"] == name and r["error"] == ""]
        if not ok:
            continue
        acc = np.array([r["accuracy"] for r in ok], dtype=float)
        ep = np.array([r["epochs"] for r in ok], dtype=float)
        agg.append({"class_count": ok[0]["class_count"], "initializer": name,
                    "mean_accuracy": float(acc.mean()), "max_accuracy": float(acc.max()),
                    "mean_epochs": float(ep.mean()), "max_epochs": float(ep.max()),
                    "run_count": len(ok)})
    return agg


def write_experiment_outputs(out_dir: str, rows: list[dict], agg: list[dict]) -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_csv(os.path.join(out_dir, "runs.csv"), RUN_COLUMNS, rows)
    write_csv(os.path.join(out_dir, "aggregate.csv"), AGG_COLUMNS, agg)


def sweep_classes(cfg: dict, class_counts: list[int], sol: PainleveSolution = None,
                  jobs: int = 1) -> tuple[list[dict], list[dict]]:
    """run_experiment per class count; aggregate rows gain a trend column
    (rmt mean accuracy minus nguyen_widrow mean accuracy, reported not
    asserted)."""
    if not class_counts or any(k < 2 for k in class_counts):
        raise ValueError("class counts must be >= 2")
    if sol is None:
        sol = painleve_table(cfgmod.get_float(cfg, "table.t_min"),
                             cfgmod.get_float(cfg, "table.t_max"),
                             cfgmod.get_int(cfg, "table.points"))
    all_rows, all_agg = [], []
    for k in class_counts:
        sub = dict(cfg)
        if cfgmod.get_str(cfg, "dataset.kind") == "synthetic":
            sub["synth.classes"] = str(k)
            widths = cfgmod.get_int_list(cfg, "layer_widths")
            widths[-1] = k
            sub["layer_widths"] = ",".join(str(w) for w in widths)
            ds = build_dataset(sub)
        else:
            ds = datamod.restrict_classes(build_dataset(cfg), k)
            widths = cfgmod.get_int_list(cfg, "layer_widths")
            widths[-1] = k
            sub["layer_widths"] = ",".join(str(w) for w in widths)
        rows, agg = _run_on_dataset(sub, sol, ds, jobs)
        by_name = {a["initializer"]: a for a in agg}
        gap = ""
        if "rmt" in by_name and "nguyen_widrow" in by_name:
            gap = by_name["rmt"]["mean_accuracy"] - by_name["nguyen_widrow"]["mean_accuracy"]
        for a in agg:
            a = dict(a)
            a["gap_vs_nguyen_widrow"] = gap if a["initializer"] == "rmt" else ""
            all_agg.append(a)
        all_rows.extend(rows)
    return all_rows, all_agg


SWEEP_COLUMNS = AGG_COLUMNS + ["gap_vs_nguyen_widrow"]


def emit_phase_diagram(sol: PainleveSolution, n_list: list[int],
                       ratio_grid: np.ndarray) -> list[dict]:
    """log mean-minima table over (n, ratio) for the transition plots."""
    rows = []
    for n in n_list:
        for r in np.asarray(ratio_grid, dtype=float):
            mc = mean_minima(sol, int(n), float(r))
            rows.append({"n": int(n), "ratio": float(r), "a": sol.t_min,
                         "b": sol.t_max, "log_mean_count": mc.log_mean_count})
    return rows


PHASE_COLUMNS = ["n", "ratio", "a", "b", "log_mean_count"]
