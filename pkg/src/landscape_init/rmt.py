"""GOE sampling, the semicircle law, and the Tracy-Widom F1 machinery.

The F1 distribution is built from the Hastings-McLeod solution of
Painleve II (q'' = 2q^3 + t q, q ~ Ai at +inf).  The solver tabulates q,
its squared tail integral and ln F1 on a fixed grid; everything else
(F1, its log-derivative, edge-scaled eigenvalue probabilities) is
interpolation on that table.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_bvp, solve_ivp

from .airy import airy_ai, airy_ai_both

_DIVERGENCE_LIMIT = 1.0e6
# Leftward of this the unstable-direction error of the pure IVP exceeds
# the accuracy of the left asymptote, so a collocation pass re-anchors it.
_BVP_THRESHOLD = -6.0
_AIRY_ANCHOR = 12.0

DEFAULT_T_MIN = -10.0
DEFAULT_T_MAX = 8.0
DEFAULT_POINTS = 4096


# ---------------------------------------------------------------------------
# GOE ensembles


@dataclass(frozen=True)
class GoeSample:
    """One symmetric Gaussian matrix: diagonal variance 1, off-diagonal 1/2."""

    order: int
    entries: np.ndarray
    seed: int


def sample_goe(order: int, seed: int) -> GoeSample:
    """Draw (M + M^T)/2 with M standard normal; lambda_max ~ sqrt(2 order)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((order, order))
    return GoeSample(order=order, entries=(m + m.T) / 2.0, seed=seed)


def sample_goe_batch(order: int, count: int, seed: int) -> np.ndarray:
    """Stack of `count` GOE matrices, shape (count, order, order)."""
    if order < 1 or count < 1:
        raise ValueError("order and count must be >= 1")
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((count, order, order))
    return (m + np.swapaxes(m, 1, 2)) / 2.0


def max_eigenvalues(order: int, count: int, seed: int) -> np.ndarray:
    """Largest eigenvalue of `count` independent GOE draws.

    Draws in chunks off one generator stream, so the result is identical
    to a single batch draw but memory stays bounded.
    """
    if order < 1 or count < 1:
        raise ValueError("order and count must be >= 1")
    rng = np.random.default_rng(seed)
    chunk = max(1, min(count, 2**24 // max(order * order, 1)))
    out = np.empty(count)
    done = 0
    while done < count:
        k = min(chunk, count - done)
        m = rng.standard_normal((k, order, order))
        mats = (m + np.swapaxes(m, 1, 2)) / 2.0
        out[done:done + k] = np.linalg.eigvalsh(mats)[:, -1]
        done += k
    return out


def semicircle_density(x) -> np.ndarray | float:
    """(2/pi) sqrt(1 - x^2) on [-1, 1], zero outside."""
    arr = np.asarray(x, dtype=float)
    out = np.zeros_like(arr)
    inside = np.abs(arr) <= 1.0
    out[inside] = (2.0 / np.pi) * np.sqrt(1.0 - arr[inside] ** 2)
    if arr.ndim == 0:
        return float(out)
    return out


def edge_rescale(lam, order: int) -> np.ndarray:
    """Map raw largest eigenvalues onto the Tracy-Widom scale.

    t = sqrt(2) * order^(1/6) * (lam - sqrt(2 * order))
    """
    lam = np.asarray(lam, dtype=float)
    return np.sqrt(2.0) * order ** (1.0 / 6.0) * (lam - np.sqrt(2.0 * order))


# ---------------------------------------------------------------------------
# Painleve II / Tracy-Widom table


@dataclass(frozen=True)
class PainleveSolution:
    """Hastings-McLeod q, its tail integrals and ln F1 on a fixed grid.

    Immutable after construction; safe to share across threads.
    """

    grid: np.ndarray     # strictly increasing abscissae
    q: np.ndarray        # q(t) > 0 everywhere
    q2_tail: np.ndarray  # int_t^inf q(y)^2 dy, non-increasing
    ln_f1: np.ndarray    # ln F1(t), non-decreasing, <= 0

    def __post_init__(self):
        g = self.grid
        if g.ndim != 1 or len(g) < 2 or np.any(np.diff(g) <= 0):
            raise ValueError("grid must be strictly increasing, length >= 2")
        if np.any(self.q <= 0):
            raise ValueError("q must be positive on the grid")
        if np.any(np.diff(self.q2_tail) > 0) or np.any(self.q2_tail < 0):
            raise ValueError("q2_tail must be non-negative and non-increasing")
        if np.any(np.diff(self.ln_f1) < 0) or np.any(self.ln_f1 > 0):
            raise ValueError("ln_f1 must be non-decreasing and <= 0")

    @property
    def t_min(self) -> float:
        return float(self.grid[0])

    @property
    def t_max(self) -> float:
        return float(self.grid[-1])


def _hastings_mcleod_left(t: float) -> float:
    """Left asymptote sqrt(-t/2) with its first two algebraic corrections."""
    return np.sqrt(-t / 2.0) * (1.0 + 1.0 / (8.0 * t**3) - (73.0 / 128.0) * t**-6)


def _painleve_rhs(t, y):
    return np.vstack([y[1], 2.0 * y[0] ** 3 + t * y[0]])


def solve_painleve_ii(t_min: float = DEFAULT_T_MIN,
                      t_max: float = DEFAULT_T_MAX,
                      points: int = DEFAULT_POINTS) -> PainleveSolution:
    """Tabulate the Hastings-McLeod solution and ln F1 on a uniform grid.

    Integrates right-to-left from an Airy boundary anchor with an
    adaptive 4th/5th-order stepper.  The Hastings-McLeod solution is a
    saddle of the ODE, so leftward IVP error grows like
    exp(0.94 |t|^1.5); past t = -6 the IVP result is re-anchored by a
    collocation pass against the known left asymptote, which restores
    uniform ~1e-10 accuracy.

    The anchor sits at min(t_max, 12): further right the solution is
    Ai(t) to relative O(Ai^2) but falls below the stepper's absolute
    tolerance, so grid points beyond the anchor are filled with Ai
    directly.  That keeps large t_max usable (t_max ~ 100 is the
    float64 ceiling before Ai underflows to zero).

    ln F1 is assembled from right-cumulative trapezoid sums of q, q^2
    and t q^2 plus closed-form Airy tail integrals beyond t_max, which
    makes it non-decreasing by construction whenever q > 0.
    """
    if not t_min < t_max:
        raise ValueError("t_min must be < t_max")
    if points < 2:
        raise ValueError("points must be >= 2")
    if t_max < 6.0:
        raise ValueError("t_max must be >= 6 for an accurate Airy boundary")

    anchor = min(t_max, _AIRY_ANCHOR)
    ai_a, aip_a = airy_ai_both(anchor)
    ai_r, aip_r = airy_ai_both(t_max)

    def blow_up(t, y):
        return abs(y[0]) - _DIVERGENCE_LIMIT

    blow_up.terminal = True

    ivp = solve_ivp(lambda t, y: [y[1], 2.0 * y[0] ** 3 + t * y[0]],
                    (anchor, t_min), [ai_a, aip_a], method="RK45",
                    rtol=3e-13, atol=1e-35, dense_output=True, events=blow_up)
    if not ivp.success or ivp.t[-1] > t_min:
        raise RuntimeError("Painleve II integration diverged; unstable step size")

    grid = np.linspace(t_min, t_max, points)
    left = grid <= anchor
    q = np.empty_like(grid)

    if t_min <= _BVP_THRESHOLD:
        q_left = _hastings_mcleod_left(t_min)
        mesh = np.linspace(t_min, anchor, 600)
        guess = ivp.sol(mesh)
        # The IVP guess may have blown off the saddle near t_min; cap it
        # at the asymptote scale so collocation starts in the basin.
        cap = 2.0 * np.sqrt(np.abs(mesh) / 2.0 + 1.0)
        guess[0] = np.clip(guess[0], -cap, cap)
        bvp = solve_bvp(_painleve_rhs,
                        lambda ya, yb: np.array([ya[0] - q_left, yb[0] - ai_a]),
                        mesh, guess, tol=1e-10, max_nodes=200000)
        if bvp.status != 0:
            raise RuntimeError("Painleve II collocation failed: " + bvp.message)
        q[left] = bvp.sol(grid[left])[0]
    else:
        q[left] = ivp.sol(grid[left])[0]
    if not left.all():
        q[~left] = airy_ai(grid[~left])

    if np.any(np.abs(q) > _DIVERGENCE_LIMIT):
        raise RuntimeError("Painleve II integration diverged; unstable step size")

    # Tail contributions beyond t_max, where q(y) = Ai(y):
    #   int_t^inf Ai^2        = Ai'(t)^2 - t Ai(t)^2
    #   int_t^inf (y-t) Ai^2  = (2/3)(t^2 Ai^2 - t Ai'^2) - (1/3) Ai Ai'
    r_tail = aip_r**2 - t_max * ai_r**2
    j_tail = (2.0 / 3.0) * (t_max**2 * ai_r**2 - t_max * aip_r**2) - ai_r * aip_r / 3.0
    q_tail = quad(lambda y: airy_ai(y), t_max, t_max + 30.0, limit=200)[0]

    s1 = _right_cumtrapz(q, grid)
    s2 = _right_cumtrapz(q * q, grid)
    sy2 = _right_cumtrapz(grid * q * q, grid)

    q2_tail = s2 + r_tail
    ln_f1 = -0.5 * (sy2 - grid * s2 + j_tail + (t_max - grid) * r_tail + s1 + q_tail)
    ln_f1 = np.minimum(ln_f1, 0.0)

    return PainleveSolution(grid=grid, q=q, q2_tail=q2_tail, ln_f1=ln_f1)


def _right_cumtrapz(f: np.ndarray, x: np.ndarray) -> np.ndarray:
    """out[i] = trapezoid integral of f from x[i] to x[-1]."""
    seg = 0.5 * (f[1:] + f[:-1]) * np.diff(x)
    out = np.zeros_like(f)
    out[:-1] = np.cumsum(seg[::-1])[::-1]
    return out


def _check_in_grid(sol: PainleveSolution, x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(arr < sol.t_min) or np.any(arr > sol.t_max):
        raise ValueError(f"argument outside the tabulated grid [{sol.t_min}, {sol.t_max}]")
    return arr


def tracy_widom_f1(sol: PainleveSolution, x) -> np.ndarray | float:
    """F1(x) by interpolation of the tabulated ln F1; monotone in x."""
    arr = _check_in_grid(sol, x)
    val = np.exp(np.interp(arr, sol.grid, sol.ln_f1))
    return float(val) if arr.ndim == 0 else val


def hastings_mcleod(sol: PainleveSolution, x) -> np.ndarray | float:
    """q(x) by interpolation on the tabulated solution."""
    arr = _check_in_grid(sol, x)
    val = np.interp(arr, sol.grid, sol.q)
    return float(val) if arr.ndim == 0 else val


def log_f1_prime(sol: PainleveSolution, x) -> np.ndarray | float:
    """ln F1'(x) = ln F1(x) + ln((q2_tail(x) + q(x)) / 2), exact identity."""
    arr = _check_in_grid(sol, x)
    lnf = np.interp(arr, sol.grid, sol.ln_f1)
    q2t = np.interp(arr, sol.grid, sol.q2_tail)
    qv = np.interp(arr, sol.grid, sol.q)
    val = lnf + np.log(0.5 * (q2t + qv))
    return float(val) if arr.ndim == 0 else val


def _log_f1_prime_grid(sol: PainleveSolution) -> np.ndarray:
    return sol.ln_f1 + np.log(0.5 * (sol.q2_tail + sol.q))


def p_lambda_max(sol: PainleveSolution, order: int, s: float) -> float:
    """Asymptotic P(lambda_max <= s) for an `order` x `order` GOE matrix.

    Uses the edge scaling t = (s - sqrt(2(order+1))) * sqrt(2) * (order+1)^(1/6)
    and clamps t to the tabulated grid (F1 ~ 0 below, ~ 1 above).
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    t = (s - np.sqrt(2.0 * (order + 1))) * np.sqrt(2.0) * (order + 1) ** (1.0 / 6.0)
    t = min(max(t, sol.t_min), sol.t_max)
    return float(np.exp(np.interp(t, sol.grid, sol.ln_f1)))


# ---------------------------------------------------------------------------
# Small-order brute-force oracle for P(lambda_max <= s)


@dataclass(frozen=True)
class ZnEstimate:
    """Two independent Monte Carlo estimates of P(lambda_max <= s)."""

    direct: float
    direct_se: float
    vandermonde: float
    vandermonde_se: float
    combined: float
    agree: bool   # |direct - vandermonde| <= 3 combined standard errors


def z_n_bruteforce(order: int, s: float, samples: int, seed: int) -> ZnEstimate:
    """Estimate P(lambda_max <= s) by eigen-sampling and by the
    Vandermonde-weighted Gaussian integral, and reconcile the two.

    The second estimator importance-samples the eigenvalue measure
    |prod (l_i - l_j)| exp(-sum l_i^2 / 2) with iid standard normals as
    the proposal, so the estimate is a ratio of weighted means; its
    standard error comes from the delta method.
    """
    if order > 6:
        raise ValueError("order > 6 rejected (factorial cost)")
    if order < 1:
        raise ValueError("order must be >= 1")
    if samples < 1000:
        raise ValueError("samples must be >= 1000")

    rng = np.random.default_rng(seed)

    m = rng.standard_normal((samples, order, order))
    mats = (m + np.swapaxes(m, 1, 2)) / 2.0
    lam_max = np.linalg.eigvalsh(mats)[:, -1]
    p_direct = float(np.mean(lam_max <= s))
    se_direct = float(np.sqrt(max(p_direct * (1.0 - p_direct), 1e-12) / samples))

    lam = rng.standard_normal((samples, order))
    weights = np.ones(samples)
    for i in range(order):
        for j in range(i + 1, order):
            weights *= np.abs(lam[:, i] - lam[:, j])
    inside = lam.max(axis=1) <= s
    num = weights * inside
    denom_mean = float(np.mean(weights))
    p_vdm = float(np.mean(num) / denom_mean)
    resid = num - p_vdm * weights
    se_vdm = float(np.sqrt(np.var(resid) / samples) / denom_mean)

    combined_se = float(np.hypot(se_direct, se_vdm))
    agree = abs(p_direct - p_vdm) <= 3.0 * combined_se
    # Inverse-variance pooling of the two estimates.
    wa = 1.0 / max(se_direct, 1e-12) ** 2
    wb = 1.0 / max(se_vdm, 1e-12) ** 2
    pooled = (wa * p_direct + wb * p_vdm) / (wa + wb)
    return ZnEstimate(direct=p_direct, direct_se=se_direct,
                      vandermonde=p_vdm, vandermonde_se=se_vdm,
                      combined=pooled, agree=agree)


# ---------------------------------------------------------------------------
# Table cache (CSV with a grid-spec hash in the header)


def grid_hash(t_min: float, t_max: float, points: int) -> str:
    key = f"{points}:{t_min:.17g}:{t_max:.17g}"
    return hashlib.sha256(key.encode()).hexdigest()[:16]


def save_table(sol: PainleveSolution, path: str) -> None:
    h = grid_hash(sol.t_min, sol.t_max, len(sol.grid))
    with open(path, "w") as fh:
        fh.write(f"# grid_hash={h} t_min={sol.t_min:.17g} t_max={sol.t_max:.17g} "
                 f"points={len(sol.grid)}\n")
        fh.write("t,q,q2_tail,ln_f1\n")
        for t, qv, q2, lf in zip(sol.grid, sol.q, sol.q2_tail, sol.ln_f1):
            fh.write(f"{t:.17g},{qv:.17g},{q2:.17g},{lf:.17g}\n")


def load_table(path: str, t_min: float, t_max: float, points: int) -> PainleveSolution | None:
    """Load a cached table; returns None unless the grid hash matches."""
    try:
        with open(path) as fh:
            header = fh.readline()
            if f"grid_hash={grid_hash(t_min, t_max, points)}" not in header:
                return None
            data = np.loadtxt(fh, delimiter=",", skiprows=1)
    except (OSError, ValueError):
        return None
    if data.shape != (points, 4):
        return None
    return PainleveSolution(grid=data[:, 0], q=data[:, 1],
                            q2_tail=data[:, 2], ln_f1=data[:, 3])


_MEMO: dict[tuple, PainleveSolution] = {}


def painleve_table(t_min: float = DEFAULT_T_MIN, t_max: float = DEFAULT_T_MAX,
                   points: int = DEFAULT_POINTS,
                   cache_dir: str | None = None) -> PainleveSolution:
    """Solve-or-load wrapper around solve_painleve_ii.

    `cache_dir` defaults to the LANDSCAPE_INIT_CACHE environment
    variable; when set, tables round-trip through CSV files keyed by the
    grid hash.  Results are also memoized in-process.
    """
    key = (float(t_min), float(t_max), int(points))
    if key in _MEMO:
        return _MEMO[key]
    if cache_dir is None:
        cache_dir = os.environ.get("LANDSCAPE_INIT_CACHE")
    path = None
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, f"painleve_{grid_hash(*key)}.csv")
        cached = load_table(path, *key)
        if cached is not None:
            _MEMO[key] = cached
            return cached
    sol = solve_painleve_ii(*key)
    if path:
        save_table(sol, path)
    _MEMO[key] = sol
    return sol
