"""Flat key=value configuration with CLI overrides.

The file format is one `key = value` per line, `#` comments allowed.
Overrides arrive as `key=value` strings from repeated `--set` flags.
"""

from __future__ import annotations

DEFAULTS = {
    "dataset.kind": "synthetic",          # synthetic | directory
    "dataset.path": "",
    "dataset.format": "pgm",
    "synth.classes": "10",
    "synth.dim": "256",
    "synth.per_class": "30",
    "synth.separation": "6.0",
    "split.train_fraction": "0.5",
    "pca.k": "64",
    "pca.fit_on": "train",                # train | all
    "layer_widths": "10,10",
    "initializers": "rmt,nguyen_widrow,xavier",
    "runs_per_initializer": "10",
    "trainer.method": "cg",               # cg | sgd
    "stop.goal": "1e-3",
    "stop.max_epochs": "500",
    "stop.grad_tol": "1e-6",
    "seed": "20240817",
    "init.mode": "deterministic",         # deterministic | stochastic
    "init.ratio_policy": "per_dimension",  # per_dimension | scalar
    "init.ratio_grid": "0.1:3.0:48",
    "init.seed": "0",
    "table.t_min": "-10.0",
    "table.t_max": "8.0",
    "table.points": "4096",
}


def parse_config_file(path: str) -> dict:
    cfg = dict(DEFAULTS)
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in DEFAULTS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            cfg[key] = value
    return cfg


def apply_overrides(cfg: dict, overrides) -> dict:
    out = dict(cfg)
    for item in overrides or ():
        if "=" not in item:
            raise ValueError(f"--set expects key=value, got {item!r}")
        key, value = (s.strip() for s in item.split("=", 1))
        if key not in DEFAULTS:
            raise ValueError(f"unknown config key {key!r}")
        out[key] = value
    return out


def get_int(cfg: dict, key: str) -> int:
    return int(cfg[key])


def get_float(cfg: dict, key: str) -> float:
    return float(cfg[key])


def get_str(cfg: dict, key: str) -> str:
    return cfg[key]


def get_int_list(cfg: dict, key: str) -> list[int]:
    return [int(s) for s in cfg[key].split(",") if s.strip()]


def get_str_list(cfg: dict, key: str) -> list[str]:
    return [s.strip() for s in cfg[key].split(",") if s.strip()]


def get_ratio_grid(cfg: dict, key: str = "init.ratio_grid") -> tuple:
    parts = cfg[key].split(":")
    if len(parts) != 3:
        raise ValueError(f"{key} must look like start:stop:count")
    return float(parts[0]), float(parts[1]), int(parts[2])
