"""Airy function Ai and its derivative, evaluated in-house.

Two regimes: a Maclaurin series for |t| <= 5 and the exponential
asymptotic expansion for t > 5.  Arguments below -5 are outside the
supported range (nothing in this package evaluates Ai there; the
oscillatory regime would need a different expansion).
"""

from __future__ import annotations

import math

import numpy as np

# Series prefactors Ai(0) and -Ai'(0).
_C1 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
_C2 = 3.0 ** (-1.0 / 3.0) / math.gamma(1.0 / 3.0)

_SERIES_CUTOFF = 5.0
_MAX_TERMS = 200


def _ai_series(t: float) -> tuple[float, float]:
    """Maclaurin series for Ai(t) and Ai'(t), |t| <= 5."""
    z3 = t * t * t
    # f = sum of t^{3k} terms, g = sum of t^{3k+1} terms.
    f_term, g_term = 1.0, t
    f_sum, g_sum = f_term, g_term
    fp_sum, gp_sum = 0.0, 1.0  # d/dt of each series
    for k in range(1, _MAX_TERMS):
        f_term *= z3 / ((3 * k - 1) * (3 * k))
        g_term *= z3 / ((3 * k) * (3 * k + 1))
        f_sum += f_term
        g_sum += g_term
        if t != 0.0:
            fp_sum += 3 * k * f_term / t
            gp_sum += (3 * k + 1) * g_term / t
        if abs(f_term) < 1e-18 * abs(f_sum) and abs(g_term) < 1e-18 * (abs(g_sum) + 1e-300):
            break
    ai = _C1 * f_sum - _C2 * g_sum
    aip = _C1 * fp_sum - _C2 * gp_sum
    return ai, aip


def _ai_asymptotic(t: float) -> tuple[float, float]:
    """Exponential asymptotic expansion for t > 5.

    Terms are summed until they stop decreasing (optimal truncation);
    at t = 5 that leaves ~8 significant digits, improving rapidly with t.
    """
    zeta = (2.0 / 3.0) * t ** 1.5
    # term_k = u_k / zeta^k, advanced by its ratio so neither u_k nor
    # zeta^k is ever formed (both overflow separately near k ~ 140).
    term = 1.0
    ai_sum = 1.0
    aip_sum = 1.0
    sign = 1.0
    prev = math.inf
    for k in range(1, _MAX_TERMS):
        term *= (6 * k - 5) * (6 * k - 1) / (72.0 * k * zeta)
        if abs(term) >= prev:
            break
        sign = -sign
        ai_sum += sign * term
        aip_sum += sign * term * (6 * k + 1) / (1.0 - 6 * k)
        prev = abs(term)
    pre = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    ai = pre * ai_sum / t ** 0.25
    aip = -pre * t ** 0.25 * aip_sum
    return ai, aip


def airy_ai(t):
    """Ai(t) for scalar or array t in [-5, inf)."""
    return _eval(t)[0]


def airy_ai_prime(t):
    """Ai'(t) for scalar or array t in [-5, inf)."""
    return _eval(t)[1]


def airy_ai_both(t):
    """(Ai(t), Ai'(t)) in one call."""
    return _eval(t)


def _eval(t):
    arr = np.asarray(t, dtype=float)
    if np.any(arr < -_SERIES_CUTOFF):
        raise ValueError("airy_ai supports t >= -5 only")
    flat = arr.ravel()
    ai = np.empty_like(flat)
    aip = np.empty_like(flat)
    for i, x in enumerate(flat):
        if x <= _SERIES_CUTOFF:
            ai[i], aip[i] = _ai_series(x)
        else:
            ai[i], aip[i] = _ai_asymptotic(x)
    if arr.ndim == 0:
        return float(ai[0]), float(aip[0])
    return ai.reshape(arr.shape), aip.reshape(arr.shape)
