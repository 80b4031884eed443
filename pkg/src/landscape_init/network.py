"""Minimal feedforward network: sigmoid units, no biases, MSE loss,
backpropagation, and two trainers (full-batch nonlinear conjugate
gradient and mini-batch SGD with momentum)."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

SGD_BATCH = 32
SGD_LR = 0.1
SGD_MOMENTUM = 0.9
ARMIJO_C = 1e-4


def sigmoid(z: np.ndarray) -> np.ndarray:
    # Split by sign so exp never overflows.
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass(frozen=True)
class Network:
    layers: tuple                 # weight matrices, fan_in x fan_out each
    out_activation: str = "sigmoid"  # or "linear"

    def __post_init__(self):
        for a, b in zip(self.layers, self.layers[1:]):
            if a.shape[1] != b.shape[0]:
                raise ValueError("adjacent layer shapes do not compose")
        if self.out_activation not in ("sigmoid", "linear"):
            raise ValueError("out_activation must be sigmoid or linear")

    def with_layers(self, layers) -> "Network":
        return Network(layers=tuple(layers), out_activation=self.out_activation)


@dataclass(frozen=True)
class TrainReport:
    epochs: int
    final_error: float
    converged: bool
    stop_reason: str  # goal | max_epochs | grad_tol | divergence
    accuracy: float
    initializer: str
    seed: int

    def __post_init__(self):
        if self.converged != (self.stop_reason == "goal"):
            raise ValueError("converged must mirror stop_reason == goal")


def forward(net: Network, batch: np.ndarray) -> list[np.ndarray]:
    """Activations per layer, input batch included as element 0."""
    x = np.asarray(batch, dtype=float)
    if x.shape[1] != net.layers[0].shape[0]:
        raise ValueError("batch width does not match first layer fan_in")
    acts = [x]
    last = len(net.layers) - 1
    for i, w in enumerate(net.layers):
        z = acts[-1] @ w
        if i == last and net.out_activation == "linear":
            acts.append(z)
        else:
            acts.append(sigmoid(z))
    return acts


def one_hot(labels: np.ndarray, classes: int) -> np.ndarray:
    labels = np.asarray(labels)
    out = np.zeros((len(labels), classes))
    out[np.arange(len(labels)), labels] = 1.0
    return out


def mse_error(net: Network, batch: np.ndarray, targets: np.ndarray) -> float:
    """Mean over samples of the summed squared output error."""
    y = forward(net, batch)[-1]
    return float(np.mean(np.sum((targets - y) ** 2, axis=1)))


def gradient(net: Network, batch: np.ndarray, targets: np.ndarray) -> list[np.ndarray]:
    """Exact MSE gradient per layer via backpropagation."""
    acts = forward(net, batch)
    m = len(batch)
    y = acts[-1]
    delta = 2.0 * (y - targets) / m
    if net.out_activation == "sigmoid":
        delta = delta * y * (1.0 - y)
    grads = [None] * len(net.layers)
    for i in range(len(net.layers) - 1, -1, -1):
        grads[i] = acts[i].T @ delta
        if i > 0:
            a = acts[i]
            delta = (delta @ net.layers[i].T) * a * (1.0 - a)
    return grads


def _pack(mats) -> np.ndarray:
    return np.concatenate([m.ravel() for m in mats])


def _unpack(vec: np.ndarray, shapes) -> tuple:
    out = []
    pos = 0
    for s in shapes:
        size = s[0] * s[1]
        out.append(vec[pos:pos + size].reshape(s))
        pos += size
    return tuple(out)


@dataclass
class StopRule:
    goal: float = 1e-3
    max_epochs: int = 500
    grad_tol: float = 1e-6


def train(net: Network, batch: np.ndarray, targets: np.ndarray,
          method: str = "cg", stop: StopRule = None, seed: int = 0,
          initializer: str = "") -> tuple[Network, TrainReport]:
    """Train until the first stop criterion fires; returns the new net
    and a report.  One epoch is one full pass over the training set (one
    conjugate-gradient step for `cg`, all mini-batches for `sgd`)."""
    stop = stop or StopRule()
    if method == "cg":
        return _train_cg(net, batch, targets, stop, seed, initializer)
    if method == "sgd":
        return _train_sgd(net, batch, targets, stop, seed, initializer)
    raise ValueError(f"unknown training method {method!r}")


def _report(epochs, err, reason, seed, initializer) -> TrainReport:
    return TrainReport(epochs=epochs, final_error=float(err),
                       converged=(reason == "goal"), stop_reason=reason,
                       accuracy=float("nan"), initializer=initializer, seed=seed)


def _train_cg(net, batch, targets, stop, seed, initializer):
    """Polak-Ribiere nonlinear CG with Armijo backtracking.

    Direction restarts to steepest descent every `total parameter count`
    steps and whenever the computed direction fails to descend, the
    standard safeguards for the nonlinear case.
    """
    shapes = [w.shape for w in net.layers]
    restart_every = sum(a * b for a, b in shapes)
    w = _pack(net.layers)

    def loss_and_grad(vec):
        n = net.with_layers(_unpack(vec, shapes))
        return (mse_error(n, batch, targets), _pack(gradient(n, batch, targets)))

    err, g = loss_and_grad(w)
    d = -g
    alpha = 1.0
    epochs = 0
    since_restart = 0
    while True:
        if not np.isfinite(err):
            return net.with_layers(_unpack(w, shapes)), _report(epochs, err, "divergence", seed, initializer)
        if err < stop.goal:
            reason = "goal"
            break
        if np.linalg.norm(g) < stop.grad_tol:
            reason = "grad_tol"
            break
        if epochs >= stop.max_epochs:
            reason = "max_epochs"
            break

        if since_restart >= restart_every or float(g @ d) >= 0.0:
            d = -g
            since_restart = 0

        slope = float(g @ d)
        step = min(2.0 * alpha, 1.0)
        new_err = None
        for _ in range(60):
            cand = w + step * d
            cand_err = mse_error(net.with_layers(_unpack(cand, shapes)), batch, targets)
            if np.isfinite(cand_err) and cand_err <= err + ARMIJO_C * step * slope:
                new_err = cand_err
                break
            step *= 0.5
        if new_err is None:
            if since_restart == 0:
                # No float-resolvable descent along -g: numerically stationary.
                reason = "grad_tol"
                break
            d = -g
            since_restart = 0
            continue

        w = w + step * d
        alpha = step
        g_new = _pack(gradient(net.with_layers(_unpack(w, shapes)), batch, targets))
        beta = max(0.0, float(g_new @ (g_new - g)) / max(float(g @ g), 1e-300))
        d = -g_new + beta * d
        g = g_new
        err = new_err
        epochs += 1
        since_restart += 1

    return net.with_layers(_unpack(w, shapes)), _report(epochs, err, reason, seed, initializer)


def _train_sgd(net, batch, targets, stop, seed, initializer):
    rng = np.random.default_rng(seed)
    layers = [w.copy() for w in net.layers]
    velocity = [np.zeros_like(w) for w in layers]
    m = len(batch)
    epochs = 0
    err = mse_error(net.with_layers(layers), batch, targets)
    while True:
        if not np.isfinite(err):
            return net.with_layers(layers), _report(epochs, err, "divergence", seed, initializer)
        if err < stop.goal:
            reason = "goal"
            break
        current = net.with_layers(layers)
        g_full = gradient(current, batch, targets)
        if np.sqrt(sum(float(np.sum(g * g)) for g in g_full)) < stop.grad_tol:
            reason = "grad_tol"
            break
        if epochs >= stop.max_epochs:
            reason = "max_epochs"
            break
        perm = rng.permutation(m)
        for start in range(0, m, SGD_BATCH):
            idx = perm[start:start + SGD_BATCH]
            grads = gradient(net.with_layers(layers), batch[idx], targets[idx])
            for v, w, g in zip(velocity, layers, grads):
                v *= SGD_MOMENTUM
                v -= SGD_LR * g
                w += v
        epochs += 1
        err = mse_error(net.with_layers(layers), batch, targets)
    return net.with_layers(layers), _report(epochs, err, reason, seed, initializer)


def nguyen_widrow_init(shape: tuple, seed: int) -> np.ndarray:
    """Uniform rows rescaled to norm 0.7 * fan_out^(1/fan_in)."""
    fan_in, fan_out = shape
    if fan_in < 1 or fan_out < 1:
        raise ValueError("dimensions must be positive")
    rng = np.random.default_rng(seed)
    w = rng.uniform(-1.0, 1.0, size=(fan_in, fan_out))
    beta = 0.7 * fan_out ** (1.0 / fan_in)
    norms = np.linalg.norm(w, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return w * (beta / norms)


def xavier_init(shape: tuple, seed: int) -> np.ndarray:
    """Uniform in +-sqrt(6 / (fan_in + fan_out))."""
    fan_in, fan_out = shape
    if fan_in < 1 or fan_out < 1:
        raise ValueError("dimensions must be positive")
    rng = np.random.default_rng(seed)
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=shape)


def evaluate(net: Network, batch: np.ndarray, labels: np.ndarray) -> float:
    """Accuracy with argmax decoding; ties resolve to the lowest index."""
    y = forward(net, batch)[-1]
    pred = np.argmax(y, axis=1)
    return float(np.mean(pred == np.asarray(labels)))
