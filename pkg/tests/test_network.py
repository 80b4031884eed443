"""Feedforward network, backprop, trainers and the baseline initializers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landscape_init import network


def _random_net(rng, widths):
    layers = tuple(0.5 * rng.standard_normal((a, b))
                   for a, b in zip(widths[:-1], widths[1:]))
    return network.Network(layers=layers)


def _fd_gradient(net, batch, targets, h=1e-6):
    shapes = [w.shape for w in net.layers]
    theta = np.concatenate([w.ravel() for w in net.layers])
    out = np.empty_like(theta)

    def unpack(vec):
        mats, pos = [], 0
        for s in shapes:
            size = s[0] * s[1]
            mats.append(vec[pos:pos + size].reshape(s))
            pos += size
        return net.with_layers(mats)

    for i in range(len(theta)):
        step = h * max(1.0, abs(theta[i]))
        up, dn = theta.copy(), theta.copy()
        up[i] += step
        dn[i] -= step
        out[i] = (network.mse_error(unpack(up), batch, targets)
                  - network.mse_error(unpack(dn), batch, targets)) / (2 * step)
    return out


def test_forward_shapes_and_sigmoid_range():
    rng = np.random.default_rng(0)
    net = _random_net(rng, [6, 5, 3])
    batch = rng.standard_normal((11, 6))
    acts = network.forward(net, batch)
    assert [a.shape for a in acts] == [(11, 6), (11, 5), (11, 3)]
    assert np.all((acts[-1] > 0) & (acts[-1] < 1))


def test_linear_output_head():
    rng = np.random.default_rng(1)
    layers = (rng.standard_normal((4, 2)),)
    net = network.Network(layers=layers, out_activation="linear")
    batch = rng.standard_normal((7, 4))
    np.testing.assert_allclose(network.forward(net, batch)[-1], batch @ layers[0])


def test_network_rejects_bad_shapes_and_activations():
    with pytest.raises(ValueError):
        network.Network(layers=(np.ones((3, 4)), np.ones((5, 2))))
    with pytest.raises(ValueError):
        network.Network(layers=(np.ones((3, 4)),), out_activation="tanh")


@given(st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=40))
@settings(max_examples=40, deadline=None)
def test_one_hot_inverts_to_argmax(labels):
    labels = np.asarray(labels)
    oh = network.one_hot(labels, 7)
    assert oh.shape == (len(labels), 7)
    np.testing.assert_array_equal(oh.sum(axis=1), 1.0)
    np.testing.assert_array_equal(np.argmax(oh, axis=1), labels)


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(42)
    for widths in ([4, 3], [5, 4, 2], [3, 6, 4, 2]):
        net = _random_net(rng, widths)
        batch = rng.standard_normal((6, widths[0]))
        targets = rng.uniform(0.2, 0.8, size=(6, widths[-1]))
        analytic = np.concatenate([g.ravel()
                                   for g in network.gradient(net, batch, targets)])
        fd = _fd_gradient(net, batch, targets)
        err = np.linalg.norm(analytic - fd) / max(np.linalg.norm(fd), 1e-12)
        assert err < 1e-6, widths


def test_evaluate_breaks_ties_toward_lowest_index():
    net = network.Network(layers=(np.zeros((3, 4)),))
    batch = np.ones((5, 3))
    labels = np.zeros(5, dtype=int)
    assert network.evaluate(net, batch, labels) == 1.0
    assert network.evaluate(net, batch, np.full(5, 2)) == 0.0


def _toy_problem(seed=0):
    rng = np.random.default_rng(seed)
    x = np.vstack([rng.standard_normal((20, 4)) + 3.0,
                   rng.standard_normal((20, 4)) - 3.0])
    labels = np.repeat([0, 1], 20)
    return x, network.one_hot(labels, 2), labels


def test_cg_training_reduces_error():
    x, targets, _ = _toy_problem()
    rng = np.random.default_rng(3)
    net = _random_net(rng, [4, 5, 2])
    before = network.mse_error(net, x, targets)
    trained, report = network.train(net, x, targets, method="cg",
                                    stop=network.StopRule(max_epochs=60), seed=1)
    assert report.final_error < before / 5
    assert report.epochs <= 60
    assert network.mse_error(trained, x, targets) == pytest.approx(report.final_error)


def test_sgd_training_reduces_error():
    x, targets, _ = _toy_problem(seed=5)
    rng = np.random.default_rng(4)
    net = _random_net(rng, [4, 5, 2])
    before = network.mse_error(net, x, targets)
    _, report = network.train(net, x, targets, method="sgd",
                              stop=network.StopRule(max_epochs=40), seed=1)
    assert report.final_error < before / 2


def test_stop_reasons():
    x, targets, _ = _toy_problem(seed=6)
    rng = np.random.default_rng(5)
    net = _random_net(rng, [4, 4, 2])
    _, loose = network.train(net, x, targets, method="cg",
                             stop=network.StopRule(goal=10.0, max_epochs=50), seed=0)
    assert loose.stop_reason == "goal" and loose.converged
    _, capped = network.train(net, x, targets, method="cg",
                              stop=network.StopRule(goal=0.0, max_epochs=3,
                                                    grad_tol=0.0), seed=0)
    assert capped.stop_reason == "max_epochs" and not capped.converged
    assert capped.epochs == 3
    with pytest.raises(ValueError):
        network.train(net, x, targets, method="newton")


def test_training_is_deterministic():
    x, targets, _ = _toy_problem(seed=7)
    rng = np.random.default_rng(6)
    net = _random_net(rng, [4, 5, 2])
    for method in ("cg", "sgd"):
        _, a = network.train(net, x, targets, method=method,
                             stop=network.StopRule(max_epochs=15), seed=9)
        _, b = network.train(net, x, targets, method=method,
                             stop=network.StopRule(max_epochs=15), seed=9)
        assert a.final_error == b.final_error


def test_report_consistency_enforced():
    with pytest.raises(ValueError):
        network.TrainReport(epochs=1, final_error=0.1, converged=True,
                            stop_reason="max_epochs", accuracy=0.5,
                            initializer="x", seed=0)


def test_nguyen_widrow_row_norms():
    w = network.nguyen_widrow_init((8, 5), seed=0)
    assert w.shape == (8, 5)
    beta = 0.7 * 5.0 ** (1.0 / 8.0)
    np.testing.assert_allclose(np.linalg.norm(w, axis=1), beta, rtol=1e-12)
    np.testing.assert_array_equal(w, network.nguyen_widrow_init((8, 5), seed=0))


def test_xavier_bounds():
    w = network.xavier_init((20, 30), seed=1)
    bound = np.sqrt(6.0 / 50.0)
    assert np.all(np.abs(w) <= bound)
    assert np.max(np.abs(w)) > 0.8 * bound  # actually fills the interval
    with pytest.raises(ValueError):
        network.xavier_init((0, 3), seed=0)
