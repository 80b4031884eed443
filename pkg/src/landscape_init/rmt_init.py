"""Random-matrix-theory weight initialization.

Per class (or per k-means cluster when the layer width disagrees with
the class count) the initializer estimates the critical tuning values
mu_c from the sample covariance, picks a mu/mu_c ratio in the linear
region of the argmax curve, finds the per-dimension argmax of h_N, maps
those argmax points into the class's observed feature ranges to get the
transform-field vector u, and scales u down by the per-feature ranges
to obtain one weight column.  Layers are initialized sequentially, each
from the sigmoid-propagated activations of the previous one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .landscape import _MU_C_FLOOR, estimate_mu_c, h_curve
from .network import sigmoid
from .rmt import PainleveSolution
from .seeds import derive_seed

FALLBACK_RATIO = 0.8


@dataclass(frozen=True)
class InitConfig:
    mode: str = "deterministic"          # or "stochastic"
    ratio_policy: str = "per_dimension"  # or "scalar"
    ratio_grid: tuple = (0.1, 3.0, 48)   # start, stop, count
    seed: int = 0

    def grid(self) -> np.ndarray:
        start, stop, count = self.ratio_grid
        return np.linspace(float(start), float(stop), int(count))


@dataclass(frozen=True)
class InitPlan:
    """One group's u vector, hypercube and derived weight column."""

    group_id: int
    u: np.ndarray
    half_width: np.ndarray           # hypercube is [u - hw, u + hw] per dim
    argmax_t: np.ndarray
    ranges: np.ndarray               # per-feature max - min over the group
    weights: Optional[np.ndarray] = None

    @property
    def hypercube(self) -> np.ndarray:
        return np.stack([self.u - self.half_width, self.u + self.half_width], axis=1)


@dataclass(frozen=True)
class LayerInit:
    layer_index: int
    weight_matrix: np.ndarray        # fan_in x fan_out, no bias column
    grouping: np.ndarray             # per-sample group id used for this layer
    fan_out: int
    plans: tuple


def select_mu_ratio(sol: PainleveSolution, n: int, mu_c: np.ndarray,
                    ratio_grid: np.ndarray) -> float:
    """Ratio from the linear region of the argmax-index curve.

    Scans argmax_t(h_N) over the ratio grid, detects the saturation
    onset r_sat (smallest ratio past which the argmax index never moves
    by a grid step again) and returns the midpoint of the pre-saturation
    segment.  A curve that is flat from the start falls back to 0.8.
    """
    ratio_grid = np.asarray(ratio_grid, dtype=float)
    if len(ratio_grid) < 30 or ratio_grid[0] > 0.1 or ratio_grid[-1] < 3.0:
        raise ValueError("ratio grid must span [0.1, 3.0] with at least 30 points")
    if np.any(mu_c <= 0):
        raise ValueError("mu_c entries must be positive")
    idx = np.array([int(np.argmax(h_curve(sol, n, r))) for r in ratio_grid])
    final = idx[-1]
    k = len(idx) - 1
    while k > 0 and abs(idx[k - 1] - final) < 1:
        k -= 1
    if k == 0:
        return FALLBACK_RATIO
    r_sat = float(ratio_grid[k])
    return 0.5 * (float(ratio_grid[0]) + r_sat)


def saturation_curve(sol: PainleveSolution, n: int,
                     ratio_grid: np.ndarray) -> np.ndarray:
    """Argmax grid index of h_N per ratio (the saturation diagnostic)."""
    return np.array([int(np.argmax(h_curve(sol, n, r))) for r in np.asarray(ratio_grid)])


def compute_class_u(sol: PainleveSolution, class_samples: np.ndarray,
                    config: InitConfig = InitConfig(), group_id: int = 0) -> InitPlan:
    """u vector and hypercube for one group of samples.

    The per-dimension argmax abscissa of h_N is mapped affinely from the
    table grid onto that dimension's observed data range; the hypercube
    half-width is the image of one grid cell.  Groups too small for a
    covariance estimate fall back to floor mu_c values.
    """
    x = np.asarray(class_samples, dtype=float)
    if x.ndim != 2 or x.shape[1] < 2:
        raise ValueError("class samples must be a matrix with >= 2 feature dimensions")
    n = x.shape[1]
    if x.shape[0] >= 3:
        mu_c = estimate_mu_c(x)
    else:
        warnings.warn(f"group {group_id}: fewer than 3 samples, mu_c floored")
        mu_c = np.full(n, np.sqrt(_MU_C_FLOOR))

    r_sel = select_mu_ratio(sol, n, mu_c, config.grid())
    if config.ratio_policy == "per_dimension":
        ratios = r_sel * np.median(mu_c) / mu_c
    elif config.ratio_policy == "scalar":
        ratios = np.full(n, r_sel)
    else:
        raise ValueError(f"unknown ratio policy {config.ratio_policy!r}")

    lo = x.min(axis=0)
    hi = x.max(axis=0)
    span = hi - lo
    t0, t1 = sol.t_min, sol.t_max
    cells = len(sol.grid) - 1

    argmax_t = np.empty(n)
    u = np.empty(n)
    half = np.empty(n)
    for i in range(n):
        t_star = float(sol.grid[int(np.argmax(h_curve(sol, n, float(ratios[i]))))])
        argmax_t[i] = t_star
        if span[i] > 0:
            u[i] = lo[i] + (t_star - t0) / (t1 - t0) * span[i]
            half[i] = span[i] / cells
        else:
            u[i] = lo[i]
            half[i] = 0.0
    return InitPlan(group_id=group_id, u=u, half_width=half,
                    argmax_t=argmax_t, ranges=span)


def draw_u_from_hypercube(plan: InitPlan, mode: str, seed: int) -> np.ndarray:
    """Hypercube center in deterministic mode, uniform draw otherwise."""
    if mode == "deterministic":
        return plan.u.copy()
    if mode != "stochastic":
        raise ValueError(f"unknown draw mode {mode!r}")
    rng = np.random.default_rng(seed)
    lo = plan.u - plan.half_width
    hi = plan.u + plan.half_width
    out = lo + (hi - lo) * rng.random(len(plan.u))
    return np.where(plan.half_width > 0, out, plan.u)


def u_to_weights(u: np.ndarray, ranges: np.ndarray) -> np.ndarray:
    """w_i = u_i / range_i, zero where the range is degenerate."""
    u = np.asarray(u, dtype=float)
    ranges = np.asarray(ranges, dtype=float)
    if u.shape != ranges.shape:
        raise ValueError("u and ranges must have matching shapes")
    out = np.zeros_like(u)
    np.divide(u, ranges, out=out, where=ranges > 0)
    return out


# ---------------------------------------------------------------------------
# k-means (for layer widths that disagree with the class count)


@dataclass(frozen=True)
class KmeansResult:
    labels: np.ndarray
    centroids: np.ndarray
    objective_path: np.ndarray  # within-cluster sum of squares per iteration


def kmeans(features: np.ndarray, k: int, seed: int,
           max_iter: int = 300) -> KmeansResult:
    """Lloyd iterations from k-means++ seeding.

    Stops when assignments are stable; empty clusters are re-seeded to
    the point farthest from its assigned centroid.
    """
    x = np.asarray(features, dtype=float)
    m = x.shape[0]
    if k > m:
        raise ValueError("k exceeds the number of samples")
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)

    # k-means++ seeding: next center drawn with probability ~ distance^2.
    centroids = np.empty((k, x.shape[1]))
    centroids[0] = x[rng.integers(m)]
    d2 = ((x - centroids[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total <= 0:
            centroids[c] = x[rng.integers(m)]
        else:
            centroids[c] = x[rng.choice(m, p=d2 / total)]
        d2 = np.minimum(d2, ((x - centroids[c]) ** 2).sum(axis=1))

    labels = np.full(m, -1)
    objective = []
    for _ in range(max_iter):
        dists = ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        new_labels = np.argmin(dists, axis=1)
        objective.append(float(dists[np.arange(m), new_labels].sum()))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            members = x[labels == c]
            if len(members) > 0:
                centroids[c] = members.mean(axis=0)
            else:
                worst = int(np.argmax(dists[np.arange(m), labels]))
                centroids[c] = x[worst]
    return KmeansResult(labels=labels, centroids=centroids,
                        objective_path=np.array(objective))


# ---------------------------------------------------------------------------
# Layer assembly


def init_layer(sol: PainleveSolution, inputs: np.ndarray, labels: np.ndarray,
               fan_out: int, config: InitConfig = InitConfig(),
               layer_index: int = 0) -> LayerInit:
    """One weight matrix (fan_in x fan_out), one column per group."""
    if fan_out <= 0:
        raise ValueError("fan_out must be positive")
    x = np.asarray(inputs, dtype=float)
    labels = np.asarray(labels)
    distinct = np.unique(labels)
    if fan_out == len(distinct):
        grouping = np.searchsorted(distinct, labels)
    else:
        km = kmeans(x, fan_out, seed=derive_seed(config.seed, "kmeans", layer_index))
        grouping = km.labels

    columns = []
    plans = []
    for g in range(fan_out):
        members = x[grouping == g]
        plan = compute_class_u(sol, members, config, group_id=g) if len(members) \
            else InitPlan(group_id=g, u=np.zeros(x.shape[1]),
                          half_width=np.zeros(x.shape[1]),
                          argmax_t=np.full(x.shape[1], sol.t_min),
                          ranges=np.zeros(x.shape[1]))
        u = draw_u_from_hypercube(plan, config.mode,
                                  derive_seed(config.seed, "group", layer_index, g))
        w = u_to_weights(u, plan.ranges)
        plans.append(replace(plan, weights=w))
        columns.append(w)
    return LayerInit(layer_index=layer_index,
                     weight_matrix=np.column_stack(columns),
                     grouping=grouping, fan_out=fan_out, plans=tuple(plans))


def init_network(sol: PainleveSolution, features: np.ndarray, labels: np.ndarray,
                 layer_widths: Sequence[int],
                 config: InitConfig = InitConfig()) -> list[LayerInit]:
    """Layer-sequential initialization with sigmoid propagation.

    Layer L+1 is computed from the activations of the already
    initialized layer L, so every later column depends on all earlier
    nodes.  Labels ride along unchanged.
    """
    if len(layer_widths) < 1:
        raise ValueError("need at least one layer width")
    x = np.asarray(features, dtype=float)
    inits = []
    for li, width in enumerate(layer_widths):
        # init_layer expects standardized inputs.  The caller owns that for
        # layer 0; for deeper layers the inputs are sigmoid activations, all
        # positive and often tightly grouped, so rescale them before planning
        # (u/range on raw activations yields one-sided, saturating columns).
        # The live network still receives the raw activations below.
        plan_x = x if li == 0 else _rescaled(x)
        layer = init_layer(sol, plan_x, labels, int(width), config, layer_index=li)
        inits.append(layer)
        x = sigmoid(x @ layer.weight_matrix)
        if float(np.ptp(x, axis=0).max(initial=0.0)) < 1e-12:
            warnings.warn(f"layer {li}: propagated activations are constant (dead layer)")
    return inits


def _rescaled(x: np.ndarray) -> np.ndarray:
    sd = x.std(axis=0)
    safe = np.where(sd > 1e-12, sd, 1.0)
    return np.where(sd > 1e-12, (x - x.mean(axis=0)) / safe, 0.0)
