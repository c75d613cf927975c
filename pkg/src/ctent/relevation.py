"""Monte Carlo simulators for the relevation-type reliability models.

A first unit with lifetime X (nonnegative support) is followed by a second
unit whose conditional survival given X = x is Fbar(x)^s * Fbar(x+t)/Fbar(x):
with probability 1 - Fbar(x)^s the second unit is dead on arrival, and a
surviving unit ages from x.  The total lifetime X + Y_s has survival
Fbar(t)(1 + (1 - Fbar(t)^s)/s), and E[Y_s] equals the entropy of the
mirrored law, which is what the z-score targets check.

Trials are partitioned into fixed-size chunks, each driven by a generator
stream spawned deterministically from (seed, chunk index); merging is by
sums, so results are bit-identical for a given seed regardless of how many
workers process the chunks (CTENT_THREADS caps the pool).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import DistributionSpec, negate
from .duality import bnb_pmf
from .entropy import delta_value, tsallis_ratio
from .errors import DomainError
from .risk import relevation_risk

_CHUNK = 1 << 17
_U_CLIP = 2.0 ** -53


@dataclass(frozen=True)
class SimulationResult:
    n_trials: int
    mean: float
    std_error: float
    target: float | None
    z_score: float | None


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CTENT_THREADS", "1")))
    except ValueError:
        return 1


def _chunk_streams(seed: int, n: int):
    n_chunks = (n + _CHUNK - 1) // _CHUNK
    seq = np.random.SeedSequence(seed)
    children = seq.spawn(n_chunks)
    sizes = [_CHUNK] * (n_chunks - 1) + [n - _CHUNK * (n_chunks - 1)]
    return list(zip(children, sizes))


def _run_chunks(fn, seed: int, n: int):
    """Map fn(rng, size) over deterministic chunk streams; reduce in chunk
    order so the worker count never changes the result."""
    chunks = _chunk_streams(seed, n)
    workers = min(_worker_count(), len(chunks))
    if workers == 1:
        return [fn(np.random.default_rng(c), m) for c, m in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, np.random.default_rng(c), m) for c, m in chunks]
        return [f.result() for f in futures]


def _check_nonneg_support(d: DistributionSpec) -> None:
    if d.support[0] < -1e-12:
        raise DomainError("relevation lifetimes need nonnegative support")


def _uniforms(rng, m: int):
    return np.clip(rng.random(m), _U_CLIP, 1.0 - _U_CLIP)


def _draw_ys(d: DistributionSpec, s: float, rng, m: int):
    """One chunk of (x, y) pairs for the prior-failure relevation model."""
    x = np.asarray(d.quantile(_uniforms(rng, m)), dtype=float)
    fbar = np.asarray(d.sf(x), dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        survive_p = np.exp(s * np.log(np.clip(fbar, 1e-300, 1.0)))
    alive = rng.random(m) < survive_p
    v = _uniforms(rng, m)
    resid_u = 1.0 - v * fbar  # inverse-CDF residual sampling: exact, no rejection
    y = np.asarray(d.quantile(np.clip(resid_u, _U_CLIP, 1.0 - _U_CLIP)),
                   dtype=float) - x
    y = np.where(alive, np.maximum(y, 0.0), 0.0)
    return x, y


def simulate_Ys(d: DistributionSpec, s: float, n: int, seed: int) -> SimulationResult:
    """Estimate E[Y_s] and compare with the entropy of the mirrored law."""
    if not s > 0.0:
        raise DomainError("the prior-failure model needs s > 0")
    _check_nonneg_support(d)
    n = int(n)
    if n < 2:
        raise DomainError("need at least 2 trials")

    def one(rng, m):
        _, y = _draw_ys(d, s, rng, m)
        return float(np.sum(y)), float(np.sum(y * y))

    sums = _run_chunks(one, seed, n)
    tot = math.fsum(p[0] for p in sums)
    tot2 = math.fsum(p[1] for p in sums)
    mean = tot / n
    var = max(tot2 - tot * tot / n, 0.0) / (n - 1)
    se = math.sqrt(var / n)
    ev = delta_value(negate(d), s)
    target = ev.value if ev.is_finite else None
    z = (mean - target) / se if (target is not None and se > 0.0) else None
    return SimulationResult(n, mean, se, target, z)


def simulate_total_lifetime_survival(d: DistributionSpec, s: float,
                                     t_grid, n: int, seed: int) -> dict:
    """Empirical survival of X + Y_s on a grid against the analytic curve
    Fbar(t)(1 + (1-Fbar(t)^s)/s), with binomial standard errors."""
    if not s > 0.0:
        raise DomainError("the prior-failure model needs s > 0")
    _check_nonneg_support(d)
    n = int(n)
    t = np.asarray(list(t_grid), dtype=float)

    def one(rng, m):
        x, y = _draw_ys(d, s, rng, m)
        tot = x + y
        return np.array([np.count_nonzero(tot > tv) for tv in t], dtype=float)

    counts = sum(_run_chunks(one, seed, n))
    emp = counts / n
    fbar = np.asarray(d.sf(t), dtype=float)
    analytic = np.array([fb * (1.0 + tsallis_ratio(fb, s)) if 0.0 < fb < 1.0
                         else (1.0 if fb >= 1.0 else 0.0) for fb in fbar])
    analytic = np.minimum(analytic, 1.0)
    se = np.sqrt(np.maximum(analytic * (1.0 - analytic), 1e-300) / n)
    return {
        "t": t.tolist(),
        "empirical": emp.tolist(),
        "analytic": analytic.tolist(),
        "std_error": se.tolist(),
        "z_scores": ((emp - analytic) / se).tolist(),
        "n_trials": n,
    }


def simulate_Tn(d: DistributionSpec, n_units: int, n: int, seed: int) -> SimulationResult:
    """Expected n-th failure time of the classical relevation process by
    sequential residual sampling; target from the generalized-CRE sum."""
    if n_units < 1:
        raise DomainError("need at least one unit")
    _check_nonneg_support(d)
    n = int(n)

    def one(rng, m):
        x = np.asarray(d.quantile(_uniforms(rng, m)), dtype=float)
        for _ in range(int(n_units) - 1):
            fbar = np.asarray(d.sf(x), dtype=float)
            v = _uniforms(rng, m)
            u_next = np.clip(1.0 - v * fbar, _U_CLIP, 1.0 - _U_CLIP)
            x = np.maximum(np.asarray(d.quantile(u_next), dtype=float), x)
        return float(np.sum(x)), float(np.sum(x * x))

    sums = _run_chunks(one, seed, n)
    tot = math.fsum(p[0] for p in sums)
    tot2 = math.fsum(p[1] for p in sums)
    mean = tot / n
    var = max(tot2 - tot * tot / n, 0.0) / (n - 1)
    se = math.sqrt(var / n)
    target = relevation_risk(d, int(n_units)).value
    z = (mean - target) / se if se > 0.0 else None
    return SimulationResult(n, mean, se, target, z)


_NS_TABLE = 512  # counts at or above this go into one tail bucket


def sample_Ns(s: float, n: int, seed: int) -> dict:
    """Sample the duality randomisation count N_s = G_A (a geometric with
    Beta(-s, 1+s) mixing parameter) and tabulate frequencies against the
    pmf (1+s)(-s)_k/(k+1)!.

    The law is heavy-tailed (k^{-(2+s)}); counts at or above 512 are
    aggregated into a single tail bucket."""
    if not (-1.0 < s < 0.0):
        raise DomainError("the randomisation law needs s in (-1, 0)")
    n = int(n)
    u = -s

    def one(rng, m):
        a = rng.beta(u, 1.0 - u, size=m)
        a = np.clip(a, 1e-12, 1.0 - 1e-12)
        # geometric on {1,2,...} with success prob 1-a; failures = k-1
        k = rng.geometric(1.0 - a) - 1
        return np.bincount(np.minimum(k, _NS_TABLE), minlength=_NS_TABLE + 1)

    counts = sum(_run_chunks(one, seed, n))
    ks = list(range(_NS_TABLE))
    return {
        "k": ks,
        "count": [int(counts[k]) for k in ks],
        "frequency": [counts[k] / n for k in ks],
        "pmf": [bnb_pmf(s, k) for k in ks],
        "tail_count": int(counts[_NS_TABLE]),
        "tail_frequency": counts[_NS_TABLE] / n,
        "n_trials": n,
    }
