"""Airy evaluator against the scipy oracle and basic identities."""

import numpy as np
import pytest
import scipy.special

from landscape_init.airy import airy_ai, airy_ai_both, airy_ai_prime


def _scipy_ai(t):
    ai, aip, _, _ = scipy.special.airy(t)
    return ai, aip


def test_matches_scipy_across_domain():
    # dense around the series/asymptotic seam at t = 5
    t = np.concatenate([np.linspace(-5.0, 4.8, 300),
                        np.linspace(4.8, 5.2, 200),
                        np.linspace(5.2, 38.0, 300)])
    ai, aip = airy_ai_both(t)
    ai_ref, aip_ref = _scipy_ai(t)
    np.testing.assert_allclose(ai, ai_ref, rtol=5e-8)
    np.testing.assert_allclose(aip, aip_ref, rtol=5e-8)


def test_known_values_at_zero():
    g = scipy.special.gamma
    assert airy_ai(0.0) == pytest.approx(3.0 ** (-2.0 / 3.0) / g(2.0 / 3.0), rel=1e-12)
    assert airy_ai_prime(0.0) == pytest.approx(-(3.0 ** (-1.0 / 3.0)) / g(1.0 / 3.0), rel=1e-12)


def test_positive_and_decreasing_for_positive_argument():
    t = np.linspace(0.0, 40.0, 400)
    ai = airy_ai(t)
    assert np.all(ai > 0)
    assert np.all(np.diff(ai) < 0)
    assert np.all(airy_ai_prime(t) < 0)


def test_no_overflow_deep_in_the_asymptotic_branch():
    # the term recurrence must not overflow even where hundreds of
    # asymptotic terms keep shrinking
    with np.errstate(all="raise"):
        ai, aip = airy_ai_both(np.array([20.0, 50.0, 80.0, 100.0]))
    assert np.all(ai > 0)
    assert np.all(np.isfinite(aip))


def test_scalar_in_scalar_out():
    assert isinstance(airy_ai(1.0), float)
    out = airy_ai(np.array([1.0, 2.0]))
    assert out.shape == (2,)


def test_rejects_arguments_left_of_series_domain():
    with pytest.raises(ValueError):
        airy_ai(-5.5)
