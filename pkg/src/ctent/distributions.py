"""Distribution catalog and generic distribution plumbing.

A :class:`DistributionSpec` bundles the CDF, survival function, quantile
function, support, first two moments and, where they exist, closed forms
for the cumulative Tsallis entropy ``delta(s)`` and its dual ``nabla(s)``.
The catalog covers the analytic families with known closed forms: powers
of a uniform, the exponential pair, the Lomax pair, Frechet, reverse
Weibull, Gumbel and logistic.  ``affine`` and ``negate`` produce derived
specs; ``negate`` carries closed forms across whenever the mirrored law is
itself (a translate of) a catalog member.

All CDF/survival/quantile callables accept scalars or numpy arrays and are
written in overflow-safe form (expm1/log1p, branch masks under errstate).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import DivergentEntropy, DomainError
from .series import pochhammer_ratio_coeffs, pochhammer_ratio_tail
from .specfun import EULER_GAMMA, lgamma, psi, psi1, psi2

_NEAR_ZERO = 1e-4  # |s| below this switches closed forms to their limit branch

ClosedForm = Optional[Callable[[float], float]]


@dataclass(frozen=True)
class DistributionSpec:
    """A distribution exposed through CDF, quantile, support and moments.

    ``closed_delta``/``closed_nabla`` evaluate the entropies in closed form
    and raise :class:`DivergentEntropy` at orders where the entropy is
    infinite (at or below ``finiteness_threshold``).  The ``neg_*`` slots
    hold the corresponding data for the mirrored variable and are consumed
    by :func:`negate`.
    """

    name: str
    params: dict
    cdf: Callable
    quantile: Callable
    support: tuple
    mean: float | None
    variance: float | None
    sf: Callable = None
    closed_delta: ClosedForm = None
    closed_nabla: ClosedForm = None
    finiteness_threshold: float | None = None
    neg_closed_delta: ClosedForm = field(default=None, repr=False)
    neg_closed_nabla: ClosedForm = field(default=None, repr=False)
    neg_finiteness_threshold: float | None = field(default=None, repr=False)

    def __post_init__(self):
        lo, hi = self.support
        if not lo < hi:
            raise DomainError(f"empty support {self.support}")
        if self.sf is None:
            cdf = self.cdf
            object.__setattr__(self, "sf", lambda x: 1.0 - cdf(x))

    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ", ".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))
        return f"{self.name}({inner})"


@dataclass(frozen=True)
class EmpiricalSample:
    """Sorted finite observations, n >= 2, for plug-in estimation."""

    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float))
        if v.size < 2:
            raise DomainError("empirical sample needs at least 2 observations")
        if not np.all(np.isfinite(v)):
            raise DomainError("empirical sample must be finite")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return int(self.values.size)


# ---------------------------------------------------------------------------
# closed forms (shared between a member and its mirrored partner)

def _check_beta(beta: float, low: float) -> float:
    beta = float(beta)
    if not beta > low:
        raise DomainError(f"beta must exceed {low}, got {beta}")
    return beta


def _delta_power(beta: float, s: float) -> float:
    return beta / ((beta + 1.0) * (beta * (1.0 + s) + 1.0))


def _nabla_power(beta: float, s: float) -> float:
    rho = lgamma(1.0 / beta + 1.0) + lgamma(s + 2.0) - lgamma(1.0 / beta + s + 2.0)
    return -(beta / (beta + 1.0)) * math.expm1(rho)


def _delta_reflected(beta: float, s: float) -> float:
    c = 1.0 / beta + 2.0
    if abs(s) < _NEAR_ZERO:
        a = psi(c) - psi(2.0)
        b = psi1(2.0) - psi1(c)
        return (beta / (beta + 1.0)) * (a - 0.5 * s * (b + a * a))
    rho = lgamma(c) + lgamma(s + 2.0) - lgamma(c + s)
    return -(beta / (s * (beta + 1.0))) * math.expm1(rho)


def _nabla_reflected(beta: float, s: float) -> float:
    return beta * (s + 1.0) * (psi(1.0 / beta + 2.0 + s) - psi(s + 2.0)) / (beta + 1.0)


def _delta_exponential(s: float) -> float:
    if abs(s) < _NEAR_ZERO:
        return psi1(2.0) + 0.5 * s * psi2(2.0)
    return (psi(s + 2.0) - psi(2.0)) / s


def _nabla_exponential(s: float) -> float:
    return (s + 1.0) * psi1(s + 2.0)


def _delta_lomax(beta: float, s: float) -> float:
    c = 2.0 - 1.0 / beta
    if abs(s) < _NEAR_ZERO:
        a = psi(2.0) - psi(c)
        b = psi1(2.0) - psi1(c)
        return (beta / (beta - 1.0)) * (a + 0.5 * s * (b + a * a))
    rho = lgamma(c) + lgamma(s + 2.0) - lgamma(c + s)
    return (beta / (s * (beta - 1.0))) * math.expm1(rho)


def _nabla_lomax(beta: float, s: float) -> float:
    return beta * (s + 1.0) * (psi(s + 2.0) - psi(s + 2.0 - 1.0 / beta)) / (beta - 1.0)


def _delta_negative_lomax(beta: float, s: float) -> float:
    threshold = 1.0 / beta - 1.0
    if s <= threshold:
        raise DivergentEntropy(
            f"cumulative Tsallis entropy of order s={s:g} is infinite for "
            f"negative_lomax(beta={beta:g}): the lower-tail integral of "
            f"F^(1+s) diverges at or below the finiteness threshold "
            f"{threshold:g}"
        )
    return beta / ((beta - 1.0) * (beta * (1.0 + s) - 1.0))


def _nabla_negative_lomax(beta: float, s: float) -> float:
    rho = lgamma(1.0 - 1.0 / beta) + lgamma(s + 2.0) - lgamma(s + 2.0 - 1.0 / beta)
    return (beta / (beta - 1.0)) * math.expm1(rho)


def _delta_negative_exponential(s: float) -> float:
    return 1.0 / (s + 1.0)


def _nabla_negative_exponential(s: float) -> float:
    return psi(s + 2.0) + EULER_GAMMA


_SERIES_HEAD = 20000


def _dual_series(s: float, g: Callable[[np.ndarray], np.ndarray]) -> float:
    """sum_{n>=1} (-s)_n/(n+1)! g(n), summed exactly to a large head and
    completed with a tail integral of the continuous coefficient function."""
    if s == 0.0:
        return 0.0
    terminating = s > 0.0 and s == math.floor(s)
    n_head = int(s) if terminating else _SERIES_HEAD
    coeffs = pochhammer_ratio_coeffs(s, n_head)[1:]
    n = np.arange(1, n_head + 1, dtype=float)
    head = math.fsum(coeffs * g(n))
    tail = 0.0 if terminating else pochhammer_ratio_tail(s, n_head, g)
    return head + tail


def _delta_frechet(beta: float, s: float) -> float:
    g = math.exp(lgamma(1.0 - 1.0 / beta))
    if s == 0.0:
        return g / beta
    return g * math.expm1(math.log1p(s) / beta) / s


def _nabla_frechet(beta: float, s: float) -> float:
    g = math.exp(lgamma(1.0 - 1.0 / beta))
    inner = _dual_series(s, lambda n: np.expm1(np.log1p(n) / beta) / n)
    return (s + 1.0) * g / beta * (1.0 + beta * inner)


def _delta_reverse_weibull(beta: float, s: float) -> float:
    g = math.exp(lgamma(1.0 + 1.0 / beta))
    if s == 0.0:
        return g / beta
    return -g * math.expm1(-math.log1p(s) / beta) / s


def _nabla_reverse_weibull(beta: float, s: float) -> float:
    g = math.exp(lgamma(1.0 + 1.0 / beta))
    inner = _dual_series(s, lambda n: -np.expm1(-np.log1p(n) / beta) / n)
    return (s + 1.0) * g / beta * (1.0 + beta * inner)


def _delta_gumbel(s: float) -> float:
    if s == 0.0:
        return 1.0
    return math.log1p(s) / s


def _nabla_gumbel(s: float) -> float:
    inner = _dual_series(s, lambda n: np.log1p(n) / n)
    return (s + 1.0) * (1.0 + inner)


def _delta_logistic(s: float) -> float:
    if abs(s) < _NEAR_ZERO:
        return psi1(1.0) + 0.5 * s * psi2(1.0)
    return (psi(s + 1.0) + EULER_GAMMA) / s


def _nabla_logistic(s: float) -> float:
    # gamma + psi(s+1) + (s+1) psi'(s+1), rewritten with both polygammas
    # shifted by one so the 1/(s+1) singularities cancel exactly as s -> -1
    return EULER_GAMMA + psi(s + 2.0) + (s + 1.0) * psi1(s + 2.0)


# ---------------------------------------------------------------------------
# catalog constructors

def make_power_uniform(beta: float) -> DistributionSpec:
    """Law of U^(1/beta) on (0,1): cdf x^beta."""
    b = _check_beta(beta, 0.0)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.0, 0.0, np.where(x >= 1.0, 1.0,
                        np.exp(b * np.log(np.clip(x, 1e-300, 1.0)))))

    def sf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.0, 1.0, np.where(x >= 1.0, 0.0,
                        -np.expm1(b * np.log(np.clip(x, 1e-300, 1.0)))))

    def quantile(u):
        return np.exp(np.log(u) / b)

    return DistributionSpec(
        name="power_uniform", params={"beta": b},
        cdf=cdf, sf=sf, quantile=quantile, support=(0.0, 1.0),
        mean=b / (b + 1.0), variance=b / ((b + 2.0) * (b + 1.0) ** 2),
        closed_delta=lambda s: _delta_power(b, s),
        closed_nabla=lambda s: _nabla_power(b, s),
        neg_closed_delta=lambda s: _delta_reflected(b, s),
        neg_closed_nabla=lambda s: _nabla_reflected(b, s),
    )


def make_reflected_power(beta: float) -> DistributionSpec:
    """Law of 1 - U^(1/beta) on (0,1): cdf 1-(1-x)^beta."""
    b = _check_beta(beta, 0.0)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.0, 0.0, np.where(x >= 1.0, 1.0,
                        -np.expm1(b * np.log1p(-np.clip(x, 0.0, 1.0 - 1e-300)))))

    def sf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.0, 1.0, np.where(x >= 1.0, 0.0,
                        np.exp(b * np.log1p(-np.clip(x, 0.0, 1.0 - 1e-300)))))

    def quantile(u):
        return -np.expm1(np.log1p(-u) / b)

    return DistributionSpec(
        name="reflected_power", params={"beta": b},
        cdf=cdf, sf=sf, quantile=quantile, support=(0.0, 1.0),
        mean=1.0 / (b + 1.0), variance=b / ((b + 2.0) * (b + 1.0) ** 2),
        closed_delta=lambda s: _delta_reflected(b, s),
        closed_nabla=lambda s: _nabla_reflected(b, s),
        neg_closed_delta=lambda s: _delta_power(b, s),
        neg_closed_nabla=lambda s: _nabla_power(b, s),
    )


def make_exponential() -> DistributionSpec:
    """Unit-rate exponential; rescale through affine()."""

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.0, 0.0, -np.expm1(-np.maximum(x, 0.0)))

    def sf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.0, 1.0, np.exp(-np.maximum(x, 0.0)))

    def quantile(u):
        return -np.log1p(-u)

    return DistributionSpec(
        name="exponential", params={},
        cdf=cdf, sf=sf, quantile=quantile, support=(0.0, math.inf),
        mean=1.0, variance=1.0,
        closed_delta=_delta_exponential,
        closed_nabla=_nabla_exponential,
        neg_closed_delta=_delta_negative_exponential,
        neg_closed_nabla=_nabla_negative_exponential,
    )


def make_lomax(beta: float) -> DistributionSpec:
    """Lomax (Pareto II) on (0, inf): cdf 1-(1+x)^(-beta), beta > 1."""
    b = _check_beta(beta, 1.0)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.0, 0.0, -np.expm1(-b * np.log1p(np.maximum(x, 0.0))))

    def sf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.0, 1.0, np.exp(-b * np.log1p(np.maximum(x, 0.0))))

    def quantile(u):
        return np.expm1(-np.log1p(-u) / b)

    return DistributionSpec(
        name="lomax", params={"beta": b},
        cdf=cdf, sf=sf, quantile=quantile, support=(0.0, math.inf),
        mean=1.0 / (b - 1.0),
        variance=b / ((b - 1.0) ** 2 * (b - 2.0)) if b > 2.0 else None,
        closed_delta=lambda s: _delta_lomax(b, s),
        closed_nabla=lambda s: _nabla_lomax(b, s),
        neg_closed_delta=lambda s: _delta_negative_lomax(b, s),
        neg_closed_nabla=lambda s: _nabla_negative_lomax(b, s),
        neg_finiteness_threshold=1.0 / b - 1.0,
    )


def make_negative_lomax(beta: float) -> DistributionSpec:
    """Law of 1 - U^(-1/beta) on (-inf, 0): cdf (1-x)^(-beta), beta > 1.

    The entropy delta(s) is infinite at or below s = 1/beta - 1.
    """
    b = _check_beta(beta, 1.0)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, 1.0, np.exp(-b * np.log1p(-np.minimum(x, 0.0))))

    def sf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, 0.0, -np.expm1(-b * np.log1p(-np.minimum(x, 0.0))))

    def quantile(u):
        return -np.expm1(-np.log(u) / b)

    return DistributionSpec(
        name="negative_lomax", params={"beta": b},
        cdf=cdf, sf=sf, quantile=quantile, support=(-math.inf, 0.0),
        mean=-1.0 / (b - 1.0),
        variance=b / ((b - 1.0) ** 2 * (b - 2.0)) if b > 2.0 else None,
        closed_delta=lambda s: _delta_negative_lomax(b, s),
        closed_nabla=lambda s: _nabla_negative_lomax(b, s),
        finiteness_threshold=1.0 / b - 1.0,
        neg_closed_delta=lambda s: _delta_lomax(b, s),
        neg_closed_nabla=lambda s: _nabla_lomax(b, s),
    )


def make_negative_exponential() -> DistributionSpec:
    """Mirrored unit exponential on (-inf, 0): cdf e^x."""

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, 1.0, np.exp(np.minimum(x, 0.0)))

    def sf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, 0.0, -np.expm1(np.minimum(x, 0.0)))

    def quantile(u):
        return np.log(u)

    return DistributionSpec(
        name="negative_exponential", params={},
        cdf=cdf, sf=sf, quantile=quantile, support=(-math.inf, 0.0),
        mean=-1.0, variance=1.0,
        closed_delta=_delta_negative_exponential,
        closed_nabla=_nabla_negative_exponential,
        neg_closed_delta=_delta_exponential,
        neg_closed_nabla=_nabla_exponential,
    )


def make_frechet(beta: float) -> DistributionSpec:
    """Frechet on (0, inf): cdf exp(-x^(-beta)), beta > 1 for a finite mean."""
    b = _check_beta(beta, 1.0)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", divide="ignore"):
            t = np.power(np.where(x > 0.0, x, 1.0), -b)
            return np.where(x > 0.0, np.exp(-t), 0.0)

    def sf(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", divide="ignore"):
            t = np.power(np.where(x > 0.0, x, 1.0), -b)
            return np.where(x > 0.0, -np.expm1(-t), 1.0)

    def quantile(u):
        return np.exp(-np.log(-np.log(u)) / b)

    mean = math.exp(lgamma(1.0 - 1.0 / b))
    var = math.exp(lgamma(1.0 - 2.0 / b)) - mean ** 2 if b > 2.0 else None
    return DistributionSpec(
        name="frechet", params={"beta": b},
        cdf=cdf, sf=sf, quantile=quantile, support=(0.0, math.inf),
        mean=mean, variance=var,
        closed_delta=lambda s: _delta_frechet(b, s),
        closed_nabla=lambda s: _nabla_frechet(b, s),
        neg_finiteness_threshold=1.0 / b - 1.0,
    )


def make_reverse_weibull(beta: float) -> DistributionSpec:
    """Reverse Weibull on (-inf, 0): cdf exp(-(-x)^beta), beta > 0."""
    b = _check_beta(beta, 0.0)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            t = np.power(np.where(x < 0.0, -x, 1.0), b)
            return np.where(x < 0.0, np.exp(-t), 1.0)

    def sf(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            t = np.power(np.where(x < 0.0, -x, 1.0), b)
            return np.where(x < 0.0, -np.expm1(-t), 0.0)

    def quantile(u):
        return -np.exp(np.log(-np.log(u)) / b)

    mean = -math.exp(lgamma(1.0 + 1.0 / b))
    var = math.exp(lgamma(1.0 + 2.0 / b)) - mean ** 2
    return DistributionSpec(
        name="reverse_weibull", params={"beta": b},
        cdf=cdf, sf=sf, quantile=quantile, support=(-math.inf, 0.0),
        mean=mean, variance=var,
        closed_delta=lambda s: _delta_reverse_weibull(b, s),
        closed_nabla=lambda s: _nabla_reverse_weibull(b, s),
    )


def make_gumbel() -> DistributionSpec:
    """Standard Gumbel: cdf exp(-e^(-x)) on the whole line."""

    def cdf(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            return np.exp(-np.exp(-x))

    def sf(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            return -np.expm1(-np.exp(-x))

    def quantile(u):
        return -np.log(-np.log(u))

    return DistributionSpec(
        name="gumbel", params={},
        cdf=cdf, sf=sf, quantile=quantile, support=(-math.inf, math.inf),
        mean=EULER_GAMMA, variance=math.pi ** 2 / 6.0,
        closed_delta=_delta_gumbel,
        closed_nabla=_nabla_gumbel,
    )


def make_logistic() -> DistributionSpec:
    """Standard logistic: cdf e^x/(1+e^x); variance pi^2/3."""

    def cdf(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            e = np.exp(-np.abs(x))
            pos = 1.0 / (1.0 + e)
            return np.where(x >= 0.0, pos, 1.0 - pos)

    def sf(x):
        return cdf(-np.asarray(x, dtype=float))

    def quantile(u):
        return np.log(u) - np.log1p(-u)

    return DistributionSpec(
        name="logistic", params={},
        cdf=cdf, sf=sf, quantile=quantile, support=(-math.inf, math.inf),
        mean=0.0, variance=math.pi ** 2 / 3.0,
        closed_delta=_delta_logistic,
        closed_nabla=_nabla_logistic,
        neg_closed_delta=_delta_logistic,
        neg_closed_nabla=_nabla_logistic,
    )


def make_uniform(a: float = 0.0, length: float = 1.0) -> DistributionSpec:
    """Uniform on (a, a+length)."""
    if not length > 0.0:
        raise DomainError(f"uniform length must be positive, got {length}")
    d = affine(make_power_uniform(1.0), float(length), float(a))
    return replace(d, name="uniform", params={"a": float(a), "length": float(length)})


# ---------------------------------------------------------------------------
# transformations

def _wrap_closed(f: ClosedForm, scale: float) -> ClosedForm:
    if f is None:
        return None
    return lambda s: scale * f(s)


def affine(d: DistributionSpec, a: float, b: float) -> DistributionSpec:
    """Spec of a*X + b for a > 0; closed entropies scale by a."""
    a = float(a)
    b = float(b)
    if not a > 0.0:
        raise DomainError(f"affine scale must be positive, got {a}")
    cdf, sf, q = d.cdf, d.sf, d.quantile
    lo, hi = d.support
    return DistributionSpec(
        name=f"affine[{d.name}]",
        params={**d.params, "scale": a, "shift": b},
        cdf=lambda x: cdf((np.asarray(x, dtype=float) - b) / a),
        sf=lambda x: sf((np.asarray(x, dtype=float) - b) / a),
        quantile=lambda u: a * q(u) + b,
        support=(a * lo + b, a * hi + b),
        mean=None if d.mean is None else a * d.mean + b,
        variance=None if d.variance is None else a * a * d.variance,
        closed_delta=_wrap_closed(d.closed_delta, a),
        closed_nabla=_wrap_closed(d.closed_nabla, a),
        finiteness_threshold=d.finiteness_threshold,
        neg_closed_delta=_wrap_closed(d.neg_closed_delta, a),
        neg_closed_nabla=_wrap_closed(d.neg_closed_nabla, a),
        neg_finiteness_threshold=d.neg_finiteness_threshold,
    )


def negate(d: DistributionSpec) -> DistributionSpec:
    """Spec of -X.  Closed forms are not inherited; they come from the
    mirrored-partner slots when the mirrored law is known analytically."""
    cdf, sf, q = d.cdf, d.sf, d.quantile
    lo, hi = d.support
    return DistributionSpec(
        name=f"negated[{d.name}]",
        params=dict(d.params),
        cdf=lambda x: sf(-np.asarray(x, dtype=float)),
        sf=lambda x: cdf(-np.asarray(x, dtype=float)),
        quantile=lambda u: -q(1.0 - np.asarray(u, dtype=float)),
        support=(-hi, -lo),
        mean=None if d.mean is None else -d.mean,
        variance=d.variance,
        closed_delta=d.neg_closed_delta,
        closed_nabla=d.neg_closed_nabla,
        finiteness_threshold=d.neg_finiteness_threshold,
        neg_closed_delta=d.closed_delta,
        neg_closed_nabla=d.closed_nabla,
        neg_finiteness_threshold=d.finiteness_threshold,
    )


def from_quantile(name: str, quantile: Callable, support: tuple,
                  mean: float | None = None, variance: float | None = None,
                  params: dict | None = None) -> DistributionSpec:
    """Build a spec from a strictly increasing quantile function.

    The CDF is obtained by monotone bisection on (0,1); adequate for
    quadrature but much slower than an analytic CDF.
    """
    lo, hi = support

    def cdf_scalar(x: float) -> float:
        if x <= lo:
            return 0.0
        if x >= hi:
            return 1.0
        a, b = 0.0, 1.0
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            for _ in range(80):
                m = 0.5 * (a + b)
                # the midpoint can round onto an endpoint where the quantile
                # is infinite; the comparison still sorts it correctly
                if float(quantile(m)) <= x:
                    a = m
                else:
                    b = m
        return 0.5 * (a + b)

    def cdf(x):
        arr = np.asarray(x, dtype=float)
        if arr.ndim == 0:
            return np.float64(cdf_scalar(float(arr)))
        return np.array([cdf_scalar(v) for v in arr.ravel()]).reshape(arr.shape)

    return DistributionSpec(
        name=name, params=params or {},
        cdf=cdf, quantile=quantile, support=support,
        mean=mean, variance=variance,
    )


def dist_mean(d: DistributionSpec) -> float:
    """The distribution's mean; falls back to quantile-space quadrature."""
    if d.mean is not None:
        return float(d.mean)
    from scipy.integrate import quad

    val, _ = quad(lambda u: float(d.quantile(u)), 0.0, 1.0, limit=200)
    return val


def dist_std(d: DistributionSpec) -> float:
    """Standard deviation; quadrature fallback when not stored."""
    if d.variance is not None:
        return math.sqrt(float(d.variance))
    from scipy.integrate import quad

    m = dist_mean(d)
    val, _ = quad(lambda u: (float(d.quantile(u)) - m) ** 2, 0.0, 1.0, limit=200)
    return math.sqrt(max(val, 0.0))


# ---------------------------------------------------------------------------
# sampling

_U_CLIP = 2.0 ** -53


def sample(d: DistributionSpec, n: int, seed: int) -> EmpiricalSample:
    """n i.i.d. draws via quantile(U) with a PCG64 generator; sorted output.

    U is clipped away from {0,1} by one ulp so that unbounded quantiles
    never produce infinities.
    """
    if n < 2:
        raise DomainError(f"sample size must be >= 2, got {n}")
    rng = np.random.default_rng(seed)
    u = np.clip(rng.random(int(n)), _U_CLIP, 1.0 - _U_CLIP)
    return EmpiricalSample(np.asarray(d.quantile(u), dtype=float))


# ---------------------------------------------------------------------------
# name registry (CLI surface: {"name": ..., <params>})

_REGISTRY: dict = {}


def register(name: str, factory: Callable, param_names: tuple = ()) -> None:
    _REGISTRY[name] = (factory, tuple(param_names))


register("power_uniform", make_power_uniform, ("beta",))
register("reflected_power", make_reflected_power, ("beta",))
register("exponential", make_exponential, ())
register("lomax", make_lomax, ("beta",))
register("negative_lomax", make_negative_lomax, ("beta",))
register("negative_exponential", make_negative_exponential, ())
register("frechet", make_frechet, ("beta",))
register("reverse_weibull", make_reverse_weibull, ("beta",))
register("gumbel", make_gumbel, ())
register("logistic", make_logistic, ())
register("uniform", make_uniform, ("a", "length"))


def available_distributions() -> list:
    return sorted(_REGISTRY)


def from_name(name: str, params: dict | None = None) -> DistributionSpec:
    """Construct a catalog member from its name and a parameter mapping."""
    if name not in _REGISTRY:
        raise DomainError(
            f"unknown distribution {name!r}; known: {', '.join(available_distributions())}")
    factory, param_names = _REGISTRY[name]
    params = dict(params or {})
    unknown = set(params) - set(param_names)
    if unknown:
        raise DomainError(f"{name} does not take parameters {sorted(unknown)}")
    return factory(**{k: float(v) for k, v in params.items()})
