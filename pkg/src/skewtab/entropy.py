"""The log-sine integral and the lozenge entropy of a slope.

lobachevsky(theta) = -integral of log|2 sin t| dt from 0 to theta, here
through its power series on (0, pi/2] with exact zeta coefficients, then
the reflection Lambda(pi - theta) = -Lambda(theta).  Absolute accuracy is
well below 1e-10 across [0, pi].

sigma(s, t) is the entropy per unit area of lozenge tilings with type
frequencies (s, t, 1 - s - t): the sum of Lambda at the three rescaled
angles, over pi.  It vanishes at the frozen corners and is concave on the
triangle s, t >= 0, s + t <= 1.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import zeta as _zeta

_NSERIES = 32
# theta (1 - log 2 theta) + sum_m zeta(2m)/(m (2m+1)) (theta/pi)^(2m) theta
_COEF = np.array([
    float(_zeta(2 * m)) / (m * (2 * m + 1) * math.pi ** (2 * m))
    for m in range(1, _NSERIES + 1)
])


def _series_half(theta):
    """Series evaluation on [0, pi/2]; exact 0 at 0."""
    theta = np.asarray(theta, dtype=float)
    out = np.zeros_like(theta)
    pos = theta > 0
    tp = theta[pos]
    acc = np.zeros_like(tp)
    t2 = tp * tp
    power = tp.copy()
    for c in _COEF:
        power = power * t2
        acc += c * power
    out[pos] = tp * (1.0 - np.log(2.0 * tp)) + acc
    return out


def lobachevsky(theta):
    """Lambda(theta) on [0, pi], scalar or array, accurate to about 1e-13."""
    arr = np.asarray(theta, dtype=float)
    scalar = arr.ndim == 0
    a = np.atleast_1d(arr)
    if np.any(a < -1e-12) or np.any(a > math.pi + 1e-12):
        raise ValueError("lobachevsky is defined here on [0, pi] only")
    clipped = np.clip(a, 0.0, math.pi)
    flip = clipped > math.pi / 2
    folded = np.where(flip, math.pi - clipped, clipped)
    vals = np.where(flip, -_series_half(folded), _series_half(folded))
    if scalar:
        return float(vals[0])
    return vals.reshape(arr.shape)


def sigma(s, t):
    """Entropy per unit area at lozenge frequencies (s, t, 1 - s - t).

    Arguments may be scalars or arrays; points outside the frequency
    triangle raise ValueError.
    """
    s_arr = np.asarray(s, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    u_arr = 1.0 - s_arr - t_arr
    if (np.any(s_arr < -1e-12) or np.any(t_arr < -1e-12)
            or np.any(u_arr < -1e-12)):
        raise ValueError("frequencies must satisfy s, t >= 0 and s + t <= 1")
    val = (
        lobachevsky(np.clip(s_arr, 0, 1) * math.pi)
        + lobachevsky(np.clip(t_arr, 0, 1) * math.pi)
        + lobachevsky(np.clip(u_arr, 0, 1) * math.pi)
    ) / math.pi
    if s_arr.ndim == 0 and t_arr.ndim == 0:
        return float(val)
    return val


def sigma_gradient(s: float, t: float) -> tuple[float, float]:
    """Partial derivatives of sigma at an interior point of the triangle."""
    u = 1.0 - s - t
    if min(s, t, u) <= 0:
        raise ValueError("gradient needs an interior point")
    return (
        math.log(math.sin(math.pi * u) / math.sin(math.pi * s)),
        math.log(math.sin(math.pi * u) / math.sin(math.pi * t)),
    )
