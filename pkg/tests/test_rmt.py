"""Random-matrix sampling and the Painleve/Tracy-Widom table."""

import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from landscape_init import rmt

# frozen independently computed reference points
Q_AT_ZERO = 0.3670615515481129
LN_F1_AT_ZERO_EXP = 0.8319079586184159


# --------------------------------------------------------------------------
# GOE sampling


def test_goe_sample_is_symmetric_and_reproducible():
    a = rmt.sample_goe(40, seed=7)
    b = rmt.sample_goe(40, seed=7)
    assert a.order == 40
    np.testing.assert_array_equal(a.entries, b.entries)
    np.testing.assert_allclose(a.entries, a.entries.T)


def test_goe_entry_variances():
    g = rmt.sample_goe(600, seed=3).entries
    diag = np.diag(g)
    off = g[np.triu_indices(600, k=1)]
    assert np.var(diag) == pytest.approx(1.0, abs=0.15)
    assert np.var(off) == pytest.approx(0.5, abs=0.02)
    assert np.mean(off) == pytest.approx(0.0, abs=0.01)


def test_goe_batch_shape_and_symmetry():
    batch = rmt.sample_goe_batch(9, 12, seed=5)
    assert batch.shape == (12, 9, 9)
    np.testing.assert_allclose(batch, np.swapaxes(batch, 1, 2))


def test_max_eigenvalues_match_batch_eigensolve():
    # chunked sampling must reproduce the single-batch draw exactly
    lam = rmt.max_eigenvalues(6, 50, seed=11)
    ref = np.linalg.eigvalsh(rmt.sample_goe_batch(6, 50, seed=11))[:, -1]
    np.testing.assert_array_equal(lam, ref)


def test_max_eigenvalues_concentrate_near_bulk_edge():
    lam = rmt.max_eigenvalues(300, 40, seed=2)
    assert np.mean(lam) == pytest.approx(np.sqrt(2 * 300), rel=0.05)


def test_semicircle_density_shape():
    x = np.array([-2.0, -1.0, 0.0, 0.5, 1.0, 2.0])
    d = rmt.semicircle_density(x)
    assert d[0] == 0.0 and d[-1] == 0.0
    assert d[2] == pytest.approx(2.0 / np.pi)
    assert rmt.semicircle_density(0.0) == pytest.approx(2.0 / np.pi)


@given(order=st.integers(min_value=1, max_value=10_000),
       lam=st.floats(min_value=-1e3, max_value=1e3,
                     allow_nan=False, allow_infinity=False))
@settings(max_examples=50, deadline=None)
def test_edge_rescale_is_invertible(order, lam):
    t = rmt.edge_rescale(lam, order)
    back = t / (np.sqrt(2.0) * order ** (1.0 / 6.0)) + np.sqrt(2.0 * order)
    assert back == pytest.approx(lam, rel=1e-9, abs=1e-9)


# --------------------------------------------------------------------------
# Painleve table


def test_right_boundary_matches_airy(sol):
    assert abs(rmt.hastings_mcleod(sol, 6.0) - scipy.special.airy(6.0)[0]) < 1e-9


def test_left_asymptote(sol):
    ratio = rmt.hastings_mcleod(sol, -6.0) / np.sqrt(3.0)
    assert ratio == pytest.approx(1.0, abs=0.01)


def test_frozen_values_at_zero(sol):
    assert rmt.hastings_mcleod(sol, 0.0) == pytest.approx(Q_AT_ZERO, abs=1e-10)
    assert rmt.tracy_widom_f1(sol, 0.0) == pytest.approx(LN_F1_AT_ZERO_EXP, abs=1e-9)


def test_table_invariants(sol):
    assert np.all(sol.q > 0)
    assert np.all(np.diff(sol.ln_f1) >= 0)
    assert np.all(sol.ln_f1 <= 0)
    assert np.all(np.diff(sol.q2_tail) <= 0)


def test_cdf_limits_and_monotonicity(sol):
    assert rmt.tracy_widom_f1(sol, sol.t_min) < 1e-3
    assert rmt.tracy_widom_f1(sol, sol.t_max) > 1.0 - 1e-6
    t = np.linspace(sol.t_min, sol.t_max, 500)
    f = rmt.tracy_widom_f1(sol, t)
    assert np.all(np.diff(f) >= 0)


def test_log_density_consistent_with_cdf_slope(sol):
    # step spans several table cells; smaller steps only measure the slope
    # of one linear interpolation segment
    t = np.linspace(-5.0, 1.0, 25)
    h = 1e-2
    analytic = np.exp(rmt.log_f1_prime(sol, t))
    fd = (rmt.tracy_widom_f1(sol, t + h) - rmt.tracy_widom_f1(sol, t - h)) / (2 * h)
    np.testing.assert_allclose(analytic, fd, rtol=1e-3)


def test_out_of_grid_evaluation_rejected(sol):
    with pytest.raises(ValueError):
        rmt.tracy_widom_f1(sol, sol.t_max + 1.0)


def test_extended_table_agrees_with_default(sol):
    ext = rmt.solve_painleve_ii(-10.0, 40.0, 11378)
    t = np.linspace(-9.5, 7.5, 40)
    np.testing.assert_allclose(rmt.hastings_mcleod(ext, t),
                               rmt.hastings_mcleod(sol, t), rtol=1e-4, atol=1e-8)
    np.testing.assert_allclose(rmt.tracy_widom_f1(ext, t),
                               rmt.tracy_widom_f1(sol, t), atol=1e-5)
    # far tail is pure Airy
    assert ext.q[-1] == pytest.approx(scipy.special.airy(40.0)[0], rel=1e-10)


def test_solver_rejects_degenerate_windows():
    with pytest.raises(ValueError):
        rmt.solve_painleve_ii(3.0, 2.0, 100)
    with pytest.raises(ValueError):
        rmt.solve_painleve_ii(-2.0, 5.0, 100)  # right boundary too low
    with pytest.raises(ValueError):
        rmt.solve_painleve_ii(-2.0, 8.0, 1)


def test_solution_validation():
    grid = np.linspace(0.0, 1.0, 5)
    good = dict(grid=grid, q=np.ones(5), q2_tail=np.linspace(1, 0, 5),
                ln_f1=np.linspace(-1, 0, 5))
    rmt.PainleveSolution(**good)
    with pytest.raises(ValueError):
        rmt.PainleveSolution(**{**good, "q": -np.ones(5)})
    with pytest.raises(ValueError):
        rmt.PainleveSolution(**{**good, "ln_f1": np.linspace(0, -1, 5)})


# --------------------------------------------------------------------------
# Edge-probability estimators


def test_p_lambda_max_is_a_cdf_in_s(sol):
    ps = [rmt.p_lambda_max(sol, 5, s) for s in (-2.0, 0.0, 2.0, 4.0)]
    assert all(0.0 <= p <= 1.0 for p in ps)
    assert ps == sorted(ps)


def test_z_n_estimators_agree(sol):
    est = rmt.z_n_bruteforce(2, 1.0, 4000, seed=123)
    assert est.agree
    assert abs(est.direct - est.vandermonde) <= 3 * (est.direct_se + est.vandermonde_se)
    assert 0.0 < est.combined < 1.0


def test_z_n_rejects_large_order():
    with pytest.raises(ValueError):
        rmt.z_n_bruteforce(7, 1.0, 1000, seed=0)


# --------------------------------------------------------------------------
# Table persistence


def test_save_load_roundtrip(tmp_path, sol):
    path = str(tmp_path / "table.csv")
    rmt.save_table(sol, path)
    back = rmt.load_table(path, sol.t_min, sol.t_max, len(sol.grid))
    assert back is not None
    np.testing.assert_array_equal(back.grid, sol.grid)
    np.testing.assert_array_equal(back.q, sol.q)
    np.testing.assert_array_equal(back.ln_f1, sol.ln_f1)
    # metadata mismatch is a miss, not an error
    assert rmt.load_table(path, sol.t_min, sol.t_max, 17) is None


def test_painleve_table_memoizes_and_caches(tmp_path, monkeypatch):
    monkeypatch.setenv("LANDSCAPE_INIT_CACHE", str(tmp_path))
    a = rmt.painleve_table(-6.5, 6.5, 512)
    b = rmt.painleve_table(-6.5, 6.5, 512)
    assert a is b
    assert list(tmp_path.glob("*.csv"))
