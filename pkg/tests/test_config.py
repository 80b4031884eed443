"""Flat key=value config files and CLI overrides."""

import numpy as np
import pytest

from landscape_init import config as cfgmod


def test_parse_file_with_comments_and_blanks(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("""
# comment line
synth.classes = 7   # trailing comment
layer_widths = 5,7

seed=42
""")
    cfg = cfgmod.parse_config_file(str(path))
    assert cfgmod.get_int(cfg, "synth.classes") == 7
    assert cfgmod.get_int_list(cfg, "layer_widths") == [5, 7]
    assert cfgmod.get_int(cfg, "seed") == 42
    # untouched keys keep their defaults
    assert cfg["trainer.method"] == cfgmod.DEFAULTS["trainer.method"]


def test_unknown_key_reports_line_number(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("synth.classes = 3\nnot.a.key = 1\n")
    with pytest.raises(ValueError, match="2"):
        cfgmod.parse_config_file(str(path))


def test_missing_equals_rejected(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("synth.classes\n")
    with pytest.raises(ValueError, match="expected key = value"):
        cfgmod.parse_config_file(str(path))


def test_overrides_apply_and_validate():
    cfg = dict(cfgmod.DEFAULTS)
    out = cfgmod.apply_overrides(cfg, ["seed=9", "pca.k = 3"])
    assert cfgmod.get_int(out, "seed") == 9
    assert cfgmod.get_int(out, "pca.k") == 3
    assert cfg["seed"] == cfgmod.DEFAULTS["seed"]  # original untouched
    with pytest.raises(ValueError):
        cfgmod.apply_overrides(cfg, ["bogus=1"])
    with pytest.raises(ValueError):
        cfgmod.apply_overrides(cfg, ["seed"])


def test_typed_getters():
    cfg = dict(cfgmod.DEFAULTS)
    assert cfgmod.get_float(cfg, "synth.separation") == 6.0
    assert cfgmod.get_str(cfg, "dataset.kind") == "synthetic"
    assert cfgmod.get_str_list(cfg, "initializers") == ["rmt", "nguyen_widrow", "xavier"]
    assert cfgmod.get_ratio_grid(cfg, "init.ratio_grid") == (0.1, 3.0, 48)
    bad = dict(cfg, **{"init.ratio_grid": "0.1:3.0"})
    with pytest.raises(ValueError):
        cfgmod.get_ratio_grid(bad, "init.ratio_grid")
