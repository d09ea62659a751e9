"""Special functions for the coherent-state weights and moments.

Only exponentially scaled Bessel values ``exp(-x) I_nu(x)`` and ratios
``I_{nu+1}/I_nu`` are ever produced, so arguments such as 2|z| = 20 (or far
larger) never overflow.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

_CF_MAX_ITER = 100_000
_TINY = 1e-300


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def bessel_i_scaled(nu: float, x: float) -> float:
    """exp(-x) I_nu(x) for real x >= 0.

    Orders in (-1, 0) are accepted so that Barut-Girardello states with
    index n < 1/2 (order 2n - 1) remain usable.
    """
    if x < 0:
        raise ValueError(f"bessel_i_scaled requires x >= 0, got {x!r}")
    if nu <= -1:
        raise ValueError(f"bessel_i_scaled requires nu > -1, got {nu!r}")
    return float(_sp.ive(nu, x))


def bessel_ratio(nu: float, x: float) -> float:
    """I_{nu+1}(x) / I_nu(x) by the continued fraction

        I_{nu+1}/I_nu = 1 / (2(nu+1)/x + 1 / (2(nu+2)/x + ...))

    evaluated with the modified Lentz algorithm.  Valid for nu > -1 and
    x >= 0; the value lies in [0, 1) and is 0 at x = 0.
    """
    if x < 0:
        raise ValueError(f"bessel_ratio requires x >= 0, got {x!r}")
    if nu <= -1:
        raise ValueError(f"bessel_ratio requires nu > -1, got {nu!r}")
    if x == 0:
        return 0.0

    # f = b1 + 1/(b2 + 1/(b3 + ...)), ratio = 1/f, b_k = 2(nu+k)/x
    f = 2.0 * (nu + 1.0) / x
    if f == 0.0:
        f = _TINY
    cc = f
    d = 0.0
    for k in range(2, _CF_MAX_ITER):
        b = 2.0 * (nu + k) / x
        d = b + d
        if d == 0.0:
            d = _TINY
        cc = b + 1.0 / cc
        if cc == 0.0:
            cc = _TINY
        d = 1.0 / d
        delta = cc * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            return 1.0 / f
    raise ArithmeticError(f"bessel_ratio continued fraction did not converge (nu={nu}, x={x})")


def log_binomial(a: float, b: float) -> float:
    """ln[Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1))] for real arguments.

    Raises ``ValueError`` if any Gamma argument is non-positive.
    """
    args = (a + 1.0, b + 1.0, a - b + 1.0)
    if min(args) <= 0:
        raise ValueError(f"log_binomial({a!r}, {b!r}) has a non-positive Gamma argument")
    return log_gamma(args[0]) - log_gamma(args[1]) - log_gamma(args[2])


def log_binomial_array(a, b) -> np.ndarray:
    """Vectorized :func:`log_binomial` for coefficient tables."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(a + 1 <= 0) or np.any(b + 1 <= 0) or np.any(a - b + 1 <= 0):
        raise ValueError("log_binomial_array has a non-positive Gamma argument")
    return _sp.gammaln(a + 1) - _sp.gammaln(b + 1) - _sp.gammaln(a - b + 1)
