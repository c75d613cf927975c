"""Internal helpers for the Pochhammer-ratio series used throughout.

The coefficient family is a_n = (-s)_n / (n+1)!, n >= 0, which decays like
n^{-(2+s)} / Gamma(-s).  Slowly convergent head-sums are completed with a
midpoint-rule tail integral of the continuous coefficient function
Gamma(x-s) / (Gamma(-s) Gamma(x+2)); the midpoint correction error is
O(f'(N)) ~ f(N)/N, far below the tolerances used here.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .specfun import gamma_negative, lgamma

__all__ = [
    "pochhammer_ratio_coeffs",
    "pochhammer_ratio_tail",
    "sign_fix_index",
]


def pochhammer_ratio_coeffs(s: float, n_max: int) -> np.ndarray:
    """Array of (-s)_n/(n+1)! for n = 0 .. n_max (inclusive)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    out = np.empty(n_max + 1)
    out[0] = 1.0
    if n_max:
        n = np.arange(1, n_max + 1, dtype=float)
        # ratio a_n / a_{n-1} = (n - 1 - s)/(n + 1)
        out[1:] = np.cumprod((n - 1.0 - s) / (n + 1.0))
    return out


def sign_fix_index(s: float) -> int:
    """Index from which the coefficients (-s)_n/(n+1)! keep a constant sign."""
    return max(1, int(math.ceil(max(s, 0.0))) + 1)


def pochhammer_ratio_tail(s: float, n_from: int,
                          g: Callable[[np.ndarray], np.ndarray] | None = None) -> float:
    """Approximate sum_{n > n_from} (-s)_n/(n+1)! * g(n) by a tail integral.

    ``g`` must be smooth and slowly varying (defaults to 1).  For integer
    s >= 0 the series terminates, so the tail is exactly zero.
    """
    if s >= 0.0 and s == math.floor(s):
        return 0.0
    gneg = gamma_negative(s)

    def integrand(x: float) -> float:
        c = math.exp(lgamma(x - s) - lgamma(x + 2.0)) / gneg
        return c * (1.0 if g is None else float(g(np.asarray(x))))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = quad(integrand, n_from + 0.5, np.inf, limit=200,
                      epsabs=1e-15, epsrel=1e-12)
    return val
