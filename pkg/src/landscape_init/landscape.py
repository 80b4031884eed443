"""Mean-minima counting for the random-landscape model H = (mu/2)|x|^2 + V(x).

`h_n` is the log-integrand whose exponential integrates (over the
Tracy-Widom edge variable t) to the core factor of the expected number
of minima; `mean_minima` assembles the full log-count with the
combinatorial prefactor.  The brute-force census on small grids gives
an independent check of the formula, and `estimate_mu_c` recovers the
critical tuning parameter from sample covariances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import gammaln, logsumexp

from .rmt import PainleveSolution, _log_f1_prime_grid

_MU_C_FLOOR = 1.0e-8


# ---------------------------------------------------------------------------
# Analytic side: h_N, windowed I_N, mean counts


@dataclass(frozen=True)
class LandscapeSpec:
    """Dimension, tuning parameter and per-dimension critical values."""

    dimension: int
    mu: float
    mu_c: np.ndarray
    covariance_kind: str  # "analytic" or "empirical"

    def __post_init__(self):
        if self.dimension < 1 or self.mu <= 0:
            raise ValueError("dimension and mu must be positive")
        if np.any(self.mu_c <= 0):
            raise ValueError("mu_c entries must be positive")
        if self.covariance_kind == "analytic" and np.ptp(self.mu_c) != 0:
            raise ValueError("analytic covariance implies equal mu_c entries")

    @classmethod
    def analytic(cls, dimension: int, mu: float, f: Callable[[float], float]) -> "LandscapeSpec":
        """mu_c = sqrt(f''(0)), with f''(0) from a one-sided difference."""
        h = 1e-4
        fpp0 = (2.0 * f(0.0) - 5.0 * f(h) + 4.0 * f(2 * h) - f(3 * h)) / h**2
        mu_c = np.full(dimension, np.sqrt(max(abs(fpp0), _MU_C_FLOOR)))
        return cls(dimension=dimension, mu=mu, mu_c=mu_c, covariance_kind="analytic")

    @classmethod
    def empirical(cls, mu: float, samples: np.ndarray) -> "LandscapeSpec":
        mu_c = estimate_mu_c(samples)
        return cls(dimension=samples.shape[1], mu=mu, mu_c=mu_c,
                   covariance_kind="empirical")


@dataclass(frozen=True)
class MinimaCount:
    log_mean_count: float
    window: Optional[tuple]  # None marks the full tabulated line

    @property
    def count(self) -> float:
        return float(np.exp(self.log_mean_count))


def h_curve(sol: PainleveSolution, n: int, ratio: float) -> np.ndarray:
    """h_N over the whole table grid (vectorized form of h_n)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    s = np.sqrt(2.0 * (n + 1)) + sol.grid * (n + 1) ** (-1.0 / 6.0) / np.sqrt(2.0)
    return s * s / 2.0 - (n / 2.0) * (s * np.sqrt(2.0 / n) - ratio) ** 2 \
        + _log_f1_prime_grid(sol)


def h_n(sol: PainleveSolution, n: int, ratio: float, t) -> np.ndarray | float:
    """Log-integrand at edge-variable t (must lie inside the table grid)."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < sol.t_min) or np.any(arr > sol.t_max):
        raise ValueError("t outside the tabulated grid")
    vals = np.interp(arr, sol.grid, h_curve(sol, n, ratio))
    return float(vals) if arr.ndim == 0 else vals


def _window_slice(sol: PainleveSolution, a: float, b: float) -> slice:
    if not a < b:
        raise ValueError("empty window")
    if a < sol.t_min or b > sol.t_max:
        raise ValueError("window outside the tabulated grid")
    # Snap both edges to the nearest node.  Splitting a window at any
    # interior point then lands both halves on the same shared node, so
    # adjacent windows stay exactly additive (end weights h/2 + h/2
    # reassemble the interior trapezoid weight h).
    lo = int(np.argmin(np.abs(sol.grid - a)))
    hi = int(np.argmin(np.abs(sol.grid - b)))
    if hi - lo < 1:
        raise ValueError("window contains fewer than two grid points")
    return slice(lo, hi + 1)


def i_n_windowed(sol: PainleveSolution, n: int, ratio: float,
                 a: float, b: float) -> float:
    """ln of the trapezoid integral of exp(h_N) over grid points in [a, b].

    Windows snap to grid nodes, which makes adjacent windows exactly
    additive.  Evaluated as a log-sum-exp so huge h never overflows.
    """
    sl = _window_slice(sol, a, b)
    g = sol.grid[sl]
    h = h_curve(sol, n, ratio)[sl]
    w = np.zeros_like(g)
    dg = np.diff(g)
    w[:-1] += dg / 2.0
    w[1:] += dg / 2.0
    return float(logsumexp(h, b=w))


def mean_minima(sol: PainleveSolution, n: int, ratio: float,
                window: Optional[tuple] = None) -> MinimaCount:
    """Natural log of the expected number of minima at mu/mu_c = ratio.

    log <N_m> = n ln(1/ratio) + ((n+3)/2) ln 2 + ln Gamma((n+3)/2)
                - (1/2) ln pi - ln(n+1) - (n/2) ln n + ln I_n(window)

    evaluated entirely in log space (the prefactor overflows past
    n ~ 170 otherwise).  `window=None` integrates over the full grid.

    The integral runs over the tabulated grid only.  For ratio > ~1.5
    the tilt exp(s^2/2 - ...) pushes the integrand's mass toward large
    t, so the grid edge acts as an effective cutoff there; counts in
    the single-minimum phase are edge-sensitive by construction.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    a, b = (sol.t_min, sol.t_max) if window is None else window
    prefactor = (n * np.log(1.0 / ratio)
                 + (n + 3.0) / 2.0 * np.log(2.0)
                 + gammaln((n + 3.0) / 2.0)
                 - 0.5 * np.log(np.pi)
                 - np.log(n + 1.0)
                 - (n / 2.0) * np.log(n))
    log_count = prefactor + i_n_windowed(sol, n, ratio, a, b)
    return MinimaCount(log_mean_count=float(log_count), window=window)


# ---------------------------------------------------------------------------
# Empirical side: mu_c from data, Gaussian fields, brute-force census


def estimate_mu_c(samples: np.ndarray) -> np.ndarray:
    """Per-dimension critical values from one class's samples.

    Empirical covariance -> finite-difference gradient along rows then
    columns -> sqrt of |diagonal|, floored at 1e-8.  Boundary rows and
    columns use one-sided differences.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[0] < 3:
        raise ValueError("need at least 3 samples (degenerate covariance)")
    cov = np.cov(samples, rowvar=False, bias=True)
    cov = np.atleast_2d(cov)
    grad = np.gradient(np.gradient(cov, axis=0), axis=1)
    return np.sqrt(np.maximum(np.abs(np.diag(grad)), _MU_C_FLOOR))


@dataclass(frozen=True)
class FieldSpec:
    """Stationary Gaussian field on a dense grid in 2 or 3 dimensions.

    Covariance between grid points p, q is n * f(|p-q|^2 / (2n)).
    """

    n: int
    axes: tuple
    f: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError("field dimension must be 2 or 3")
        if len(self.axes) != self.n:
            raise ValueError("one axis array per dimension required")

    @property
    def shape(self) -> tuple:
        return tuple(len(a) for a in self.axes)

    def points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes, indexing="ij")
        return np.column_stack([m.ravel() for m in mesh])


def _field_cholesky(spec: FieldSpec) -> np.ndarray:
    pts = spec.points()
    total = len(pts)
    if total > 10_000:
        raise ValueError("grid too large for dense covariance (limit 10^4 points)")
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1)
    cov = spec.n * spec.f(d2 / (2.0 * spec.n)) + 1e-10 * np.eye(total)
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise ValueError("covariance not positive definite after regularization") from exc


def sample_gaussian_field(spec: FieldSpec, seed: int) -> np.ndarray:
    """One mean-zero field draw on the grid, shape given by the axes."""
    chol = _field_cholesky(spec)
    rng = np.random.default_rng(seed)
    return (chol @ rng.standard_normal(chol.shape[0])).reshape(spec.shape)


def _neighbor_shifts(n: int):
    shifts = np.array(np.meshgrid(*([(-1, 0, 1)] * n), indexing="ij")).reshape(n, -1).T
    return [tuple(s) for s in shifts if any(s)]


def _fd_hessian(h_field: np.ndarray, steps: np.ndarray, index: tuple) -> np.ndarray:
    """Central second differences of the landscape at one interior point."""
    n = h_field.ndim
    hess = np.empty((n, n))
    idx = np.array(index)

    def at(offset):
        return h_field[tuple(idx + offset)]

    for i in range(n):
        ei = np.zeros(n, dtype=int)
        ei[i] = 1
        hess[i, i] = (at(ei) - 2.0 * at(np.zeros(n, dtype=int)) + at(-ei)) / steps[i] ** 2
        for j in range(i + 1, n):
            ej = np.zeros(n, dtype=int)
            ej[j] = 1
            hess[i, j] = hess[j, i] = (at(ei + ej) - at(ei - ej) - at(-ei + ej)
                                       + at(-ei - ej)) / (4.0 * steps[i] * steps[j])
    return hess


def count_minima_bruteforce(spec: FieldSpec, mu: float, draws: int, seed: int) -> float:
    """Mean number of strict grid minima of (mu/2)|x|^2 + V over field draws.

    A point counts only if it beats all 3^n - 1 neighbors strictly and
    its finite-difference Hessian is positive definite; the double test
    keeps saddle plateaus and grid noise out of the census.
    """
    if any(len(a) < 5 for a in spec.axes):
        raise ValueError("grid too coarse: need >= 5 points per axis")
    chol = _field_cholesky(spec)
    rng = np.random.default_rng(seed)
    mesh = np.meshgrid(*spec.axes, indexing="ij")
    bowl = (mu / 2.0) * sum(m * m for m in mesh)
    steps = np.array([a[1] - a[0] for a in spec.axes])
    shifts = _neighbor_shifts(spec.n)
    core = tuple(slice(1, -1) for _ in range(spec.n))

    counts = np.empty(draws)
    for d in range(draws):
        v = (chol @ rng.standard_normal(chol.shape[0])).reshape(spec.shape)
        h_field = bowl + v
        inner = h_field[core]
        strict = np.ones_like(inner, dtype=bool)
        for s in shifts:
            sl = tuple(slice(1 + si, dim - 1 + si) for si, dim in zip(s, spec.shape))
            strict &= inner < h_field[sl]
        total = 0
        for flat in np.flatnonzero(strict):
            index = tuple(np.array(np.unravel_index(flat, inner.shape)) + 1)
            eig = np.linalg.eigvalsh(_fd_hessian(h_field, steps, index))
            if eig[0] > 0:
                total += 1
        counts[d] = total
    return float(np.mean(counts))
