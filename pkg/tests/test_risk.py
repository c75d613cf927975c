import math

import numpy as np
import pytest

from ctent import (
    DivergentEntropy,
    DomainError,
    K_series,
    PreconditionNotMet,
    affine,
    coherence_diagnostics,
    delta_value,
    make_distortion,
    make_exponential,
    make_frechet,
    make_gumbel,
    make_logistic,
    make_lomax,
    make_power_uniform,
    make_uniform,
    mrl_representation,
    nabla_value,
    negate,
    relevation_risk,
    risk_axioms_check,
    risk_delta,
    risk_nabla,
)
from ctent.distributions import dist_mean

K_HALF_AT_ONE = -0.2803723055467760  # s/(s+1) - psi(s+1) - gamma at s = 1/2


def _k_series_oracle(s, t, n_terms):
    a = 1.0
    acc = 0.0
    tn = 1.0
    for n in range(1, n_terms):
        a *= (n - 1.0 - s) / (n + 1.0)
        tn *= t
        acc += a * tn / n
    return acc


def test_K_series_examples():
    assert K_series(0.7, 0.0) == 0.0
    # integer order terminates: only the n=1 term survives at s=1
    assert K_series(1.0, 1.0) == pytest.approx(-0.5, abs=1e-12)
    assert K_series(1.0, 0.4) == pytest.approx(-0.2, abs=1e-13)
    assert K_series(0.5, 1.0) == pytest.approx(K_HALF_AT_ONE, abs=1e-12)
    assert K_series(0.5, 1.0) == pytest.approx(_k_series_oracle(0.5, 1.0, 2_000_000),
                                               abs=1e-9)
    for s in (-0.5, 0.4, 2.7):
        for t in (0.3, 0.91, 0.999):
            assert K_series(s, t) == pytest.approx(_k_series_oracle(s, t, 400_000),
                                                   abs=1e-10)
    with pytest.raises(DomainError):
        K_series(0.5, 1.2)


@pytest.mark.parametrize("a,L,s", [(0.0, 1.0, 0.0), (2.0, 3.0, 1.0), (-1.0, 2.0, 0.5)])
def test_uniform_risk_closed_forms(a, L, s):
    u = make_uniform(a, L)
    assert risk_delta(u, s).value == pytest.approx(
        a + L * (s + 3.0) / (2.0 * (s + 2.0)), abs=1e-9)
    assert risk_nabla(u, s).value == pytest.approx(
        a + L * (2.0 * s + 3.0) / (2.0 * (s + 2.0)), abs=1e-9)


def test_risk_examples():
    ex = make_exponential()
    assert risk_delta(ex, 1000.0).value == pytest.approx(1.0, abs=2e-3)
    assert risk_nabla(ex, 0.0).value == pytest.approx(2.0, abs=1e-8)
    with pytest.raises(DivergentEntropy):
        risk_delta(make_lomax(2.0), -0.6)


def test_risk_matches_mean_plus_mirror_entropy():
    for d in (make_exponential(), make_lomax(3.0), make_power_uniform(2.0),
              make_logistic(), make_gumbel()):
        for s in (-0.3, 0.0, 1.0, 2.5):
            rd = risk_delta(d, s)
            ref = dist_mean(d) + delta_value(negate(d), s).value
            assert rd.value == pytest.approx(ref, abs=rd.abs_error_bound + 1e-9)
            rn = risk_nabla(d, s)
            refn = dist_mean(d) + nabla_value(negate(d), s).value
            assert rn.value == pytest.approx(refn, abs=rn.abs_error_bound + 1e-9)


def test_risk_monotone_in_order_and_pinned():
    u = make_uniform(0.0, 1.0)
    grid = (-0.5, 0.0, 0.5, 1.0, 3.0, 10.0)
    deltas = [risk_delta(u, s).value for s in grid]
    nablas = [risk_nabla(u, s).value for s in grid]
    assert all(b < a for a, b in zip(deltas, deltas[1:]))
    assert all(b > a for a, b in zip(nablas, nablas[1:]))
    for v in deltas + nablas:
        assert 0.5 - 1e-9 <= v <= 1.0 + 1e-9  # between the mean and max


def test_mrl_representation_examples():
    assert mrl_representation(make_exponential(), 0.0, "delta").value == pytest.approx(
        2.0, abs=1e-6)
    u = make_uniform(0.0, 1.0)
    assert mrl_representation(u, 1.0, "delta").value == pytest.approx(2.0 / 3.0, abs=1e-7)
    assert mrl_representation(u, 0.0, "nabla").value == pytest.approx(
        risk_delta(u, 0.0).value, abs=1e-6)
    with pytest.raises(DomainError):
        mrl_representation(u, 0.0, "bogus")


@pytest.mark.parametrize("d", [make_exponential(), make_power_uniform(1.0),
                               make_lomax(3.0), make_logistic(),
                               make_frechet(2.5)],
                         ids=lambda d: d.label())
@pytest.mark.parametrize("s", [0.0, 0.8, 2.0])
def test_mrl_agrees_with_distortion(d, s):
    got = mrl_representation(d, s, "delta")
    want = risk_delta(d, s)
    assert got.value == pytest.approx(want.value,
                                      abs=got.abs_error_bound + want.abs_error_bound)
    gotn = mrl_representation(d, s, "nabla")
    wantn = risk_nabla(d, s)
    assert gotn.value == pytest.approx(wantn.value,
                                       abs=gotn.abs_error_bound + wantn.abs_error_bound)


def test_distortion_factories_normalised():
    for label, sn in (("h_s", 0.5), ("h_s", -0.5), ("k_s", 2.0),
                      ("h_tilde_s", 1.5), ("H_tilde_n", 2)):
        f = make_distortion(label, sn)
        assert float(f.eval(0.0)) == pytest.approx(0.0, abs=1e-12)
        assert float(f.eval(1.0)) == pytest.approx(1.0, abs=1e-12)
    # the order-0 generalized-CRE map is the exception: it doubles
    assert float(make_distortion("h_tilde_s", 0.0).eval(1.0)) == pytest.approx(2.0)


def test_coherence_diagnostics():
    for s in (-0.5, 0.5, 1.0, 3.0):
        for label in ("h_s", "k_s"):
            rep = coherence_diagnostics(make_distortion(label, s), 10000)
            assert rep["monotone_increasing"], (label, s)
            assert rep["concave"], (label, s)
    rep = coherence_diagnostics(make_distortion("h_tilde_s", 0.5), 10000)
    assert not rep["monotone_increasing"]
    assert rep["first_monotonicity_violation"] is not None
    rep = coherence_diagnostics(make_distortion("h_tilde_s", 2.0), 10000)
    assert not rep["concave"]
    rep = coherence_diagnostics(make_distortion("H_tilde_n", 3), 10000)
    assert rep["monotone_increasing"]
    assert rep["deriv1_positive_decreasing"]
    with pytest.raises(DomainError):
        coherence_diagnostics(make_distortion("h_s", 1.0), 50)


def test_distortion_derivatives_match_finite_differences():
    t = np.linspace(0.05, 0.95, 19)
    h = 1e-6
    for label, sn in (("h_s", 0.7), ("k_s", 0.7), ("k_s", -0.4),
                      ("h_tilde_s", 2.0), ("H_tilde_n", 2)):
        f = make_distortion(label, sn)
        fd1 = (np.asarray(f.eval(t + h)) - np.asarray(f.eval(t - h))) / (2 * h)
        assert np.allclose(np.asarray(f.deriv1(t)), fd1, rtol=1e-5, atol=1e-6)
        fd2 = (np.asarray(f.deriv1(t + h)) - np.asarray(f.deriv1(t - h))) / (2 * h)
        assert np.allclose(np.asarray(f.deriv2(t)), fd2, rtol=1e-4, atol=1e-5)


def test_risk_axioms():
    ex = make_exponential()
    fast = affine(ex, 0.5, 0.0)  # rate-2 exponential, stochastically below
    rep = risk_axioms_check(fast, ex, 0.5, a=2.0, b=3.0)
    assert all(v for k, v in rep.items() if k.endswith("_ok"))
    rep2 = risk_axioms_check(make_uniform(0.0, 1.0), make_uniform(0.2, 1.0), 1.0,
                             a=1.5, b=-1.0)
    assert all(v for k, v in rep2.items() if k.endswith("_ok"))


def test_risk_axioms_precondition():
    # interleaved supports admit no stochastic order
    with pytest.raises(PreconditionNotMet):
        risk_axioms_check(make_uniform(0.4, 0.2), make_uniform(0.0, 1.0), 1.0,
                          a=1.0, b=0.0)


def test_interleaved_uniform_counterexample():
    # ordered risk values without any stochastic ordering: with b > a and
    # L = M + 2(b-a) the (b, M) uniform sits strictly below the (a, L) one
    a, b, M = 0.0, 1.0, 1.5
    L = M + 2.0 * (b - a)
    wide = make_uniform(a, L)
    narrow = make_uniform(b, M)
    assert a < b < b + M < a + L
    for s in (0.0, 1.0, 2.0):
        assert risk_delta(narrow, s).value < risk_delta(wide, s).value
        assert risk_nabla(narrow, s).value < risk_nabla(wide, s).value
    with pytest.raises(PreconditionNotMet):
        risk_axioms_check(narrow, wide, 1.0, a=1.0, b=0.0)


def test_hazard_rate_order_consequence():
    # exponentials are hazard-rate ordered by rate and DFR, so the mirrored
    # entropy is ordered at every order
    lam1, lam2 = 2.0, 1.0  # lam1 >= lam2
    x = affine(make_exponential(), 1.0 / lam1, 0.0)
    y = affine(make_exponential(), 1.0 / lam2, 0.0)
    for s in (-0.5, 0.0, 0.5, 1.0, 3.0):
        dx = delta_value(negate(x), s).value
        dy = delta_value(negate(y), s).value
        assert dx <= dy + 1e-12


def test_relevation_risk_examples():
    ex = make_exponential()
    assert relevation_risk(ex, 1).value == pytest.approx(1.0, abs=1e-9)
    assert relevation_risk(ex, 2).value == pytest.approx(2.0, abs=1e-9)
    assert relevation_risk(ex, 4).value == pytest.approx(4.0, abs=1e-8)
    u = relevation_risk(make_power_uniform(1.0), 1)
    assert u.value == pytest.approx(0.5, abs=1e-10)
    with pytest.raises(DomainError):
        relevation_risk(make_logistic(), 2)
    with pytest.raises(DomainError):
        relevation_risk(ex, 0)
