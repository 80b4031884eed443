"""End-to-end runs of the five CLI subcommands on tiny inputs."""

import numpy as np
import pytest

from landscape_init import cli, rmt

TINY_CFG = """\
# tiny synthetic benchmark, sized for test runtime
dataset.kind = synthetic
synth.classes = 3
synth.dim = 12
synth.per_class = 8
synth.separation = 5.0
split.train_fraction = 0.5
pca.k = 6
layer_widths = 4,3
initializers = rmt,nguyen_widrow
runs_per_initializer = 2
trainer.method = cg
stop.max_epochs = 40
seed = 777
"""


@pytest.fixture()
def cfg_path(tmp_path):
    path = tmp_path / "tiny.cfg"
    path.write_text(TINY_CFG)
    return str(path)


def _csv_rows(path):
    lines = path.read_text().strip().splitlines()
    return lines[0].split(","), lines[1:]


def test_experiment_command(cfg_path, tmp_path, capsys):
    out = tmp_path / "out"
    rc = cli.main(["experiment", cfg_path, "--out", str(out),
                   "--set", "runs_per_initializer=1"])
    assert rc == 0
    header, rows = _csv_rows(out / "runs.csv")
    assert header[:2] == ["class_count", "initializer"]
    assert len(rows) == 2  # 2 initializers x 1 run after the override
    _, agg = _csv_rows(out / "aggregate.csv")
    assert len(agg) == 2
    assert (out / "experiment.png").stat().st_size > 0
    printed = capsys.readouterr().out
    assert "initializer" in printed and "wrote" in printed


def test_experiment_rejects_unknown_override(cfg_path, tmp_path):
    with pytest.raises(ValueError, match="unknown"):
        cli.main(["experiment", cfg_path, "--out", str(tmp_path / "o"),
                  "--set", "no.such.key=1"])


def test_sweep_command(cfg_path, tmp_path):
    out = tmp_path / "out"
    rc = cli.main(["sweep", cfg_path, "--classes", "2,3",
                   "--set", "runs_per_initializer=1", "--out", str(out)])
    assert rc == 0
    header, rows = _csv_rows(out / "aggregate.csv")
    assert header[-1] == "gap_vs_nguyen_widrow"
    assert len(rows) == 4  # 2 class counts x 2 initializers
    assert (out / "sweep.png").stat().st_size > 0


def test_phase_command(tmp_path):
    out = tmp_path / "out"
    rc = cli.main(["phase", "--n", "2,8", "--ratios", "0.5:3.0:5",
                   "--out", str(out)])
    assert rc == 0
    header, rows = _csv_rows(out / "phase.csv")
    assert header == ["n", "ratio", "a", "b", "log_mean_count"]
    assert len(rows) == 10
    values = [float(r.split(",")[-1]) for r in rows]
    assert np.all(np.isfinite(values))
    assert (out / "phase.png").stat().st_size > 0


def test_phase_rejects_bad_ratio_spec(tmp_path):
    with pytest.raises(SystemExit):
        cli.main(["phase", "--ratios", "0.5:3.0", "--out", str(tmp_path)])
    with pytest.raises(SystemExit):
        cli.main(["phase", "--ratios", "3.0:0.5:4", "--out", str(tmp_path)])


def test_tw_table_command(tmp_path):
    out = tmp_path / "out"
    rc = cli.main(["tw-table", "--t-min", "-6", "--t-max", "6",
                   "--points", "257", "--out", str(out)])
    assert rc == 0
    path = out / "painleve_table.csv"
    loaded = rmt.load_table(str(path), -6.0, 6.0, 257)
    assert loaded is not None
    direct = rmt.painleve_table(-6.0, 6.0, 257)
    np.testing.assert_array_equal(loaded.grid, direct.grid)
    np.testing.assert_array_equal(loaded.q, direct.q)
    np.testing.assert_array_equal(loaded.ln_f1, direct.ln_f1)
    assert (out / "painleve_table.png").stat().st_size > 0


def test_validate_command(tmp_path, capsys):
    out = tmp_path / "out"
    rc = cli.main(["validate", "--out", str(out)])
    printed = capsys.readouterr().out
    assert rc == 0, printed
    header, rows = _csv_rows(out / "validate.csv")
    assert header == ["check", "passed", "detail"]
    assert len(rows) >= 5
    assert all(r.split(",")[1] == "true" for r in rows)
    assert (out / "validate_semicircle.png").stat().st_size > 0
    assert (out / "validate_edge.png").stat().st_size > 0
    assert "PASS" in printed


def test_missing_subcommand_exits(capsys):
    with pytest.raises(SystemExit):
        cli.main([])
    assert "experiment" in capsys.readouterr().err
