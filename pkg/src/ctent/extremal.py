"""Range bounds for the normalised entropy and their maximizers.

Three regimes are covered:

* positive laws, entropy over the mean: the closed range is [0, 1], never
  attained, approached by powers of a uniform;
* finite variance, entropy over the standard deviation for s > -1/2: the
  sharp bound 1/sqrt(2s+1), attained by U^(1/s) for s > 0, by the negative
  Lomax with beta = -1/s for s < 0 and by the mirrored exponential at s=0;
* symmetric finite-variance laws: the bound
  (s+1)/sqrt(2 s^2 (2s+1)) * sqrt(1 - Gamma(s+1)^2/Gamma(2s+1)), attained
  by the symmetric power family built on (1-U)^s - U^s (the "s-Logistic");
  at s = 0 it degenerates to pi/(2 sqrt(3)) with the rescaled logistic as
  the unique maximizer.

The module also evaluates the gamma-function gap
phi(s) = Gamma(s+2)^2/Gamma(2s+1) - 1 - 2s + s^2 (nonnegative from its
unique negative root onward, with equality exactly at s = 0 and 1), and
the cumulative entropy of the standard normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import (
    DistributionSpec,
    affine,
    make_exponential,
    make_logistic,
    make_negative_lomax,
    make_power_uniform,
    negate,
    register,
)
from .entropy import _quad
from .errors import DomainError, NotBracketedError
from .specfun import lgamma

SYM_BOUND_0 = math.pi / (2.0 * math.sqrt(3.0))


@dataclass(frozen=True)
class RangeBound:
    regime: str
    s: float
    upper: float
    maximizer: DistributionSpec | None
    attained: bool


# ---------------------------------------------------------------------------
# normal distribution helpers (erfc-based CDF; Acklam rational initial
# guess for the quantile polished by one Halley step)

_ACKLAM_A = (-3.969683028665376e+01, 2.209460984245205e+02,
             -2.759285104469687e+02, 1.383577518672690e+02,
             -3.066479806614716e+01, 2.506628277459239e+00)
_ACKLAM_B = (-5.447609879822406e+01, 1.615858368580409e+02,
             -1.556989798598866e+02, 6.680131188771972e+01,
             -1.328068155288572e+01)
_ACKLAM_C = (-7.784894002430293e-03, -3.223964580411365e-01,
             -2.400758277161838e+00, -2.549732539343734e+00,
             4.374664141464968e+00, 2.938163982698783e+00)
_ACKLAM_D = (7.784695709041462e-03, 3.224671290700398e-01,
             2.445134137142996e+00, 3.754408661907416e+00)

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _normal_cdf_scalar(x: float) -> float:
    return 0.5 * math.erfc(-x / _SQRT2)


def _normal_quantile_scalar(u: float) -> float:
    if not 0.0 < u < 1.0:
        raise DomainError("normal quantile needs u in (0,1)")
    a, b, c, dd_ = _ACKLAM_A, _ACKLAM_B, _ACKLAM_C, _ACKLAM_D
    p_low = 0.02425
    if u < p_low:
        q = math.sqrt(-2.0 * math.log(u))
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
            ((((dd_[0] * q + dd_[1]) * q + dd_[2]) * q + dd_[3]) * q + 1.0)
    elif u <= 1.0 - p_low:
        q = u - 0.5
        r = q * q
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / \
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
    else:
        q = math.sqrt(-2.0 * math.log1p(-u))
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
            ((((dd_[0] * q + dd_[1]) * q + dd_[2]) * q + dd_[3]) * q + 1.0)
    # one Halley step against the erfc-based CDF
    e = _normal_cdf_scalar(x) - u
    pdf = _INV_SQRT_2PI * math.exp(-0.5 * x * x)
    if pdf > 0.0:
        x -= e / (pdf + 0.5 * x * e)
    return x


def normal_spec() -> DistributionSpec:
    """Standard normal as a DistributionSpec (symmetric, unit variance)."""

    def cdf(x):
        arr = np.asarray(x, dtype=float)
        if arr.ndim == 0:
            return np.float64(_normal_cdf_scalar(float(arr)))
        flat = np.array([_normal_cdf_scalar(v) for v in arr.ravel()])
        return flat.reshape(arr.shape)

    def sf(x):
        return cdf(-np.asarray(x, dtype=float))

    def quantile(u):
        arr = np.asarray(u, dtype=float)
        if arr.ndim == 0:
            return np.float64(_normal_quantile_scalar(float(arr)))
        flat = np.array([_normal_quantile_scalar(v) for v in arr.ravel()])
        return flat.reshape(arr.shape)

    return DistributionSpec(
        name="normal", params={},
        cdf=cdf, sf=sf, quantile=quantile,
        support=(-math.inf, math.inf), mean=0.0, variance=1.0,
    )


register("normal", normal_spec, ())


# ---------------------------------------------------------------------------
# range bounds

def bound_positive(s) -> RangeBound:
    """Entropy over the mean on positive laws: range [0, 1], supremum not
    attained (approached by U^(1/beta) as beta -> 0)."""
    sv = float(s)
    if not sv > -1.0:
        raise DomainError("order must exceed -1")
    return RangeBound("positive", sv, 1.0, None, False)


def bound_l2(s) -> RangeBound:
    """Entropy over the standard deviation: sharp bound 1/sqrt(2s+1) for
    s > -1/2, attained by the stated power/negative-Lomax/exponential
    maximizers."""
    sv = float(s)
    if not sv > -0.5:
        raise DomainError("the L2 range needs s > -1/2")
    upper = 1.0 / math.sqrt(2.0 * sv + 1.0)
    if sv > 0.0:
        maximizer = make_power_uniform(1.0 / sv)
    elif sv < 0.0:
        maximizer = make_negative_lomax(-1.0 / sv)
    else:
        maximizer = negate(make_exponential())
    return RangeBound("l2", sv, upper, maximizer, True)


def symmetric_upper(s: float) -> float:
    """The symmetric-regime bound; continuous through s = 0 where it equals
    pi/(2 sqrt(3))."""
    if not s > -0.5:
        raise DomainError("the symmetric range needs s > -1/2")
    if abs(s) < 1e-4:
        # (s+1)/sqrt(2s+1) * sqrt((1-e^u)/(2 s^2)) with
        # u = 2 lgamma(s+1) - lgamma(2s+1) = -pi^2 s^2/6 + 2 zeta(3) s^3 + ...
        zeta3 = 1.2020569031595943
        return SYM_BOUND_0 * (1.0 - (6.0 * zeta3 / math.pi ** 2) * s)
    u = 2.0 * lgamma(s + 1.0) - lgamma(2.0 * s + 1.0)
    return (s + 1.0) / math.sqrt(2.0 * s * s * (2.0 * s + 1.0)) * \
        math.sqrt(-math.expm1(u))


def make_s_logistic(s: float, beta: float) -> DistributionSpec:
    """The symmetric maximizer family: the law of eps |X_1|^{1/beta} with
    X_1 = (1-U)^s - U^s and an independent sign eps.

    Bounded on [-1,1] for s > 0; unbounded with heavy tails for
    s in (-1/2, 0).  The CDF is the numeric inverse of the quantile
    (bracketing bisection polished by Newton)."""
    if not ((-0.5 < s < 0.0) or s > 0.0):
        raise DomainError("s must lie in (-1/2, 0) or (0, inf)")
    if not 0.0 < beta <= 1.0:
        raise DomainError("beta must lie in (0, 1]")
    sgn = 1.0 if s > 0.0 else -1.0

    def q_one(u):
        # quantile of X_1: sgn(s) (u^s - (1-u)^s), odd about 1/2
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return sgn * (np.power(u, s) - np.power(1.0 - u, s))

    def quantile(u):
        u = np.asarray(u, dtype=float)
        base = q_one(u)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = np.sign(base) * np.power(np.abs(base), 1.0 / beta)
        return np.where(base == 0.0, 0.0, out)

    hi = 1.0 if s > 0.0 else math.inf
    support = (-hi, hi)

    def cdf_scalar(x: float) -> float:
        if x <= support[0]:
            return 0.0
        if x >= support[1]:
            return 1.0
        a, b = 0.0, 1.0
        for _ in range(90):
            m = 0.5 * (a + b)
            if float(quantile(m)) <= x:
                a = m
            else:
                b = m
        # Newton polish on q(u) = x using the analytic quantile derivative
        u = 0.5 * (a + b)
        for _ in range(4):
            qu = float(quantile(u))
            also = float(q_one(u))
            dq1 = abs(s) * (u ** (s - 1.0) + (1.0 - u) ** (s - 1.0))
            if also == 0.0:
                break
            dq = dq1 * abs(also) ** (1.0 / beta - 1.0) / beta
            if not math.isfinite(dq) or dq <= 0.0:
                break
            step = (qu - x) / dq
            u_new = u - step
            if not a <= u_new <= b:
                break
            u = u_new
        return min(max(u, 0.0), 1.0)

    def cdf(x):
        arr = np.asarray(x, dtype=float)
        if arr.ndim == 0:
            return np.float64(cdf_scalar(float(arr)))
        flat = np.array([cdf_scalar(v) for v in arr.ravel()])
        return flat.reshape(arr.shape)

    # variance in quantile space, where the integrand is polynomial-like
    var, _ = _quad(lambda u: float(quantile(u)) ** 2, 0.0, 1.0,
                   epsabs=1e-12, epsrel=1e-11, limit=400)
    return DistributionSpec(
        name="s_logistic", params={"s": float(s), "beta": float(beta)},
        cdf=cdf, quantile=quantile, support=support,
        mean=0.0, variance=var,
    )


def bound_symmetric(s) -> RangeBound:
    """Symmetric finite-variance regime; the bound is attained by the
    s-Logistic with beta = 1 (rescaled logistic when s = 0)."""
    sv = float(s)
    upper = symmetric_upper(sv)
    if sv == 0.0:
        maximizer = affine(make_logistic(), math.sqrt(3.0) / math.pi, 0.0)
    else:
        maximizer = make_s_logistic(sv, 1.0)
    return RangeBound("symmetric", sv, upper, maximizer, True)


# ---------------------------------------------------------------------------
# the gamma-function gap

def gamma_gap(s: float) -> float:
    """phi(s) = Gamma(s+2)^2/Gamma(2s+1) - 1 - 2s + s^2 for s > -2.

    A reciprocal-gamma (reflection) formulation keeps the evaluation smooth
    across the poles of Gamma(2s+1) at nonpositive half-integers.
    """
    if not s > -2.0:
        raise DomainError("gamma_gap needs s > -2")
    poly = 1.0 + 2.0 * s - s * s
    z = 2.0 * s + 1.0
    if z > 1e-8:
        return math.exp(2.0 * lgamma(s + 2.0) - lgamma(z)) - poly
    # 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi, entire in z
    inv_gamma = math.sin(math.pi * z) * math.exp(lgamma(1.0 - z)) / math.pi
    return math.exp(2.0 * lgamma(s + 2.0)) * inv_gamma - poly


def gamma_gap_argmax(lo: float = 1e-6, hi: float = 1.0 - 1e-6) -> tuple:
    """(argmax, max) of the gap on (0,1) by golden-section search."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = gamma_gap(c), gamma_gap(d)
    for _ in range(120):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = gamma_gap(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = gamma_gap(d)
        if b - a < 1e-12:
            break
    x = 0.5 * (a + b)
    return x, gamma_gap(x)


def gamma_gap_root() -> float:
    """The unique root of the gap on (-2, -3/2), by bisection."""
    a, b = -2.0 + 1e-9, -1.5
    fa, fb = gamma_gap(a), gamma_gap(b)
    if not fa < 0.0 < fb:
        raise NotBracketedError("gamma gap does not change sign on (-2, -3/2)")
    for _ in range(200):
        m = 0.5 * (a + b)
        if gamma_gap(m) < 0.0:
            a = m
        else:
            b = m
        if b - a < 1e-13:
            break
    return 0.5 * (a + b)


def gaussian_cumulative_entropy() -> float:
    """Cumulative entropy of the standard normal by x-space quadrature
    (absolute error well below 1e-8); just under pi/(2 sqrt(3))."""

    def integrand(x: float) -> float:
        F = _normal_cdf_scalar(x)
        if F <= 0.0 or F >= 1.0:
            return 0.0
        return -F * math.log(F)

    val, _ = _quad(integrand, -40.0, 40.0, epsabs=1e-12, epsrel=1e-12, limit=400)
    return val


def beta_trinomial_bound_check(x: float) -> dict:
    """Compare the gap bound with the two-parameter Beta-function bound
    specialised at (x, x): the latter subtracts a nonnegative defect, so it
    is never sharper on (0,1)."""
    if not 0.0 < x < 1.0:
        raise DomainError("x must lie in (0,1)")
    lhs = math.exp(2.0 * lgamma(x + 2.0) - lgamma(2.0 * x + 1.0))
    gap_rhs = 1.0 + 2.0 * x - x * x
    defect = min(2.0 * x ** 4 / (2.0 * x + 1.0), x * (x - 1.0) ** 2 / 2.0)
    cited_rhs = gap_rhs - defect
    return {
        "x": x,
        "gamma_ratio": lhs,
        "gap_bound_rhs": gap_rhs,
        "cited_bound_rhs": cited_rhs,
        "gap_bound_holds": lhs >= gap_rhs - 1e-12,
        "cited_bound_holds": lhs > cited_rhs - 1e-12,
        "gap_bound_sharper": gap_rhs >= cited_rhs - 1e-15,
    }
