"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The underlying checks live in ctent.selftest (shared with the CLI's
``selftest --level full``); the whole battery runs once per session here.
"""

import os

import pytest

from ctent.selftest import run_selftest


@pytest.fixture(scope="session")
def full_report(tmp_path_factory):
    out_dir = str(tmp_path_factory.mktemp("selftest_out"))
    reports, ok = run_selftest("full", out_dir=out_dir)
    return {"reports": {r["name"]: r for r in reports}, "all_ok": ok,
            "out_dir": out_dir}


def _gate(report, number, label):
    status = "PASS" if report["ok"] else "FAIL"
    print(f"ACCEPTANCE {number:2d} [{status}] {label}: {report['detail']}")
    assert report["ok"], f"criterion {number} ({label}): {report['detail']}"


def test_criterion_01_closed_form_table(full_report):
    _gate(full_report["reports"]["closed_form_table"], 1,
          "quadrature matches every closed form to 1e-7 within 30s")


def test_criterion_02_benchmark_constants(full_report):
    _gate(full_report["reports"]["benchmark_constants"], 2,
          "the five order-zero entropy constants to 1e-9")


def test_criterion_03_duality(full_report):
    _gate(full_report["reports"]["duality"], 3,
          "series transforms, randomisation pmf mass, involutive transform")


def test_criterion_04_risk(full_report):
    _gate(full_report["reports"]["risk"], 4,
          "uniform risk formulas to 1e-9 and distortion diagnostics")


def test_criterion_05_range_bounds(full_report):
    _gate(full_report["reports"]["range_bounds"], 5,
          "bound attainment to 1e-6 and 200-trial dominance sweep")


def test_criterion_06_gamma_gap_constants(full_report):
    _gate(full_report["reports"]["gamma_gap_constants"], 6,
          "gap maximum/argmax/root and the normal constant")


def test_criterion_07_skewness_constants(full_report):
    _gate(full_report["reports"]["skewness_constants"], 7,
          "limiting skewness roots to 1e-5 and 20-point curve monotonicity")


def test_criterion_08_simulation(full_report):
    _gate(full_report["reports"]["simulation"], 8,
          "Monte Carlo z-scores within 4 SE under the runtime cap")


def test_criterion_09_estimator_consistency(full_report):
    _gate(full_report["reports"]["estimator_consistency"], 9,
          "plug-in estimate in the replicate band; atomic sample exact")


def test_criterion_10_selftest_headless(full_report):
    ok = full_report["all_ok"]
    files = sorted(os.listdir(full_report["out_dir"]))
    status = "PASS" if (ok and len(files) >= 4) else "FAIL"
    print(f"ACCEPTANCE 10 [{status}] headless selftest exits clean and wrote "
          f"{len(files)} figure tables: {', '.join(files)}")
    assert ok
    assert {"fig_skewness_power_uniform.csv", "fig_skewness_negative_lomax.csv",
            "fig_gamma_gap_narrow.csv", "fig_gamma_gap_wide.csv"} <= set(files)
