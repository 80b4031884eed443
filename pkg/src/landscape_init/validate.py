"""Self-checks against brute force and closed forms.

Each check compares a fast-path result (table lookup, closed-form count,
reduced-rank estimate) against an independent slow computation on the
same inputs and reports the measured discrepancy.  The CLI prints one
PASS/FAIL line per check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from . import landscape, rmt
from .airy import airy_ai
from .seeds import derive_seed


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_semicircle(seed: int = 0) -> tuple[CheckResult, np.ndarray]:
    n = 1000
    eigs = []
    for i in range(50):
        m = rmt.sample_goe(n, derive_seed(seed, "semicircle", i))
        eigs.append(np.linalg.eigvalsh(m.entries))
    scaled = np.concatenate(eigs) / np.sqrt(2.0 * n)
    at_zero = np.mean(np.abs(scaled) < 0.05) / 0.1
    second = float(np.mean(scaled**2))
    err0 = abs(at_zero - 2.0 / np.pi)
    err2 = abs(second - 0.25)
    ok = err0 <= 0.03 and err2 <= 0.01
    detail = (f"density(0)={at_zero:.4f} (target {2.0 / np.pi:.4f}, err {err0:.4f}), "
              f"m2={second:.4f} (target 0.25, err {err2:.4f})")
    return CheckResult("semicircle", ok, detail), scaled


def check_edge_law(sol: rmt.PainleveSolution, seed: int = 0) -> tuple[CheckResult, np.ndarray]:
    n = 200
    lam = rmt.max_eigenvalues(n, 2000, derive_seed(seed, "edge"))
    t = rmt.edge_rescale(lam, n)
    inside = np.clip(t, sol.t_min, sol.t_max)
    ks = stats.ks_1samp(
        inside, lambda x: rmt.tracy_widom_f1(sol, np.clip(x, sol.t_min, sol.t_max))
    ).statistic
    ok = ks <= 0.05
    return CheckResult("edge-law", bool(ok), f"KS={ks:.4f} (limit 0.05)"), t


def check_painleve(sol: rmt.PainleveSolution) -> CheckResult:
    err_right = abs(rmt.hastings_mcleod(sol, 6.0) - airy_ai(6.0))
    left_ratio = rmt.hastings_mcleod(sol, -6.0) / np.sqrt(3.0)
    mono = bool(np.all(np.diff(sol.ln_f1) >= 0.0))
    ok = err_right <= 1e-6 and 0.95 <= left_ratio <= 1.05 and mono
    detail = (f"|q(6)-Ai(6)|={err_right:.2e}, q(-6)/sqrt(3)={left_ratio:.4f}, "
              f"ln F1 monotone={mono}")
    return CheckResult("painleve", ok, detail)


def check_log_density(sol: rmt.PainleveSolution) -> CheckResult:
    ts = np.linspace(-6.0, 2.0, 50)
    analytic = np.exp(rmt.log_f1_prime(sol, ts))
    # Step of ~2 table cells: smaller steps measure the slope of one
    # linear interpolation segment, not the derivative.
    h = 1e-2
    fd = (rmt.tracy_widom_f1(sol, ts + h) - rmt.tracy_widom_f1(sol, ts - h)) / (2.0 * h)
    rel = np.max(np.abs(analytic - fd) / np.abs(fd))
    ok = rel <= 1e-3
    return CheckResult("log-density", bool(ok), f"max rel err={rel:.2e} (limit 1e-3)")


def check_zn(seed: int = 0) -> CheckResult:
    worst = 0.0
    for s in range(4):
        est = rmt.z_n_bruteforce(3, float(s), 20000, derive_seed(seed, "zn", s))
        worst = max(worst, abs(est.direct - est.vandermonde))
    ok = worst <= 0.03
    return CheckResult("z-n", ok, f"max |direct-vandermonde|={worst:.4f} (limit 0.03)")


def check_census(sol: rmt.PainleveSolution, seed: int = 77) -> CheckResult:
    # f(x) = exp(-x) has f''(0) = 1, so mu_c = 1 and mu equals the ratio.
    corr = lambda x: np.exp(-x)
    axes = (np.linspace(-6.0, 6.0, 41), np.linspace(-6.0, 6.0, 41))
    spec = landscape.FieldSpec(n=2, axes=axes, f=corr)
    census = {r: landscape.count_minima_bruteforce(spec, r, 50, seed)
              for r in (0.5, 1.0, 2.0, 3.0)}
    formula = {r: landscape.mean_minima(sol, 2, r).count for r in (0.5, 1.0, 2.0)}
    ok = 0.8 <= census[3.0] <= 1.2 and census[0.5] > census[3.0]
    factors = []
    for r in (0.5, 1.0, 2.0):
        f = max(census[r], formula[r]) / max(min(census[r], formula[r]), 1e-12)
        factors.append(f)
        ok = ok and f <= 2.5
    detail = (f"census={[round(census[r], 3) for r in (0.5, 1.0, 2.0, 3.0)]}, "
              f"formula={[round(formula[r], 3) for r in (0.5, 1.0, 2.0)]}, "
              f"factors={[round(f, 2) for f in factors]}")
    return CheckResult("census", ok, detail)


def check_mu_c_recovery(seed: int = 0) -> CheckResult:
    # Samples with covariance exp(-(i-j)^2 / 2N) have mu_c = 1/sqrt(N)
    # in every dimension.
    n = 32
    idx = np.arange(n)
    cov = np.exp(-((idx[:, None] - idx[None, :]) ** 2) / (2.0 * n))
    chol = np.linalg.cholesky(cov + 1e-12 * np.eye(n))
    rng = np.random.default_rng(derive_seed(seed, "mu-c"))
    samples = rng.standard_normal((1000, n)) @ chol.T
    est = landscape.estimate_mu_c(samples)
    target = 1.0 / np.sqrt(n)
    rel = np.max(np.abs(est - target) / target)
    ok = rel <= 0.25
    return CheckResult("mu-c", bool(ok), f"worst dim rel err={rel:.3f} (limit 0.25)")


def run_all(seed: int = 0) -> tuple[list[CheckResult], np.ndarray, np.ndarray]:
    """Run every check; also returns the samples needed for figures."""
    sol = rmt.painleve_table()
    res_semi, scaled = check_semicircle(seed)
    res_edge, t_samples = check_edge_law(sol, seed)
    results = [
        res_semi,
        res_edge,
        check_painleve(sol),
        check_log_density(sol),
        check_zn(seed),
        check_census(sol),
        check_mu_c_recovery(seed),
    ]
    return results, scaled, t_samples
