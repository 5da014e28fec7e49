# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
import numpy as np
import pytest

from cppforge.gf_core import make_field, make_tower
from cppforge.grid_sweeps import SweepReport, Sweeper, h_grid, prime_powers, run_sweep, towers


def test_prime_powers():
    assert list(prime_powers(10)) == [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]


def test_towers():
    assert [t.order for t in towers(16)] == [4, 8, 16, 16, 9]
    assert all(t.n >= 3 for t in towers(64, min_n=3))


def test_h_grid_is_seeded():
    base = make_field(3)
    first = h_grid(base, np.random.default_rng(1), 4)
    second = h_grid(base, np.random.default_rng(1), 4)
    assert len(first) == 27 + 4
    assert [h.coeffs for h in first] == [h.coeffs for h in second]
    assert len(h_grid(make_field(2, 5), np.random.default_rng(1), 4)) == 4


def test_report_records_counterexamples():
    report = SweepReport("monomial", 64, 0)
    report.record(True, {"case": 1})
    report.record(False, {"case": 2})
    assert report.total == 2
    assert report.agreements == 1
    assert not report.passed
    assert report.to_dict()["counterexamples"] == [{"case": 2}]


@pytest.mark.parametrize("name,max_order", [
    ("trace-simple", 32),
    ("trace-perm", 32),
    ("trace-general", 32),
    ("trace-binomial", 32),
    ("norm-lift", 64),
    ("monomial", 64),
    ("kernel-binomial", 64),
    ("search", 7),
])
def test_sweeps_find_no_counterexamples(name, max_order):
    report = run_sweep(name, max_order=max_order, seed=3, random_count=3)
    assert report.passed, report.counterexamples
    assert report.total > 0
    assert report.agreements == report.total


def test_trace_sweeps_skip_inadmissible_h():
    report = run_sweep("trace-simple", max_order=16, random_count=0)
    assert report.skipped > 0
    assert report.fiber_checked == report.fiber_agreements > 0


def test_binary_monomial_sweep():
    report = run_sweep("binary-monomial", max_order=256)
    assert report.passed, report.counterexamples
    assert report.total == 20
    assert report.skipped == 10


def test_sweep_is_reproducible():
    first = Sweeper(max_order=32, seed=9, random_count=4).run("trace-general").to_dict()
    second = Sweeper(max_order=32, seed=9, random_count=4).run("trace-general").to_dict()
    assert first == second


def test_unknown_sweep():
    with pytest.raises(ValueError):
        run_sweep("no-such-sweep")


def test_trace_binomial_sweep_over_f64():
    report = run_sweep("trace-binomial", max_order=64, random_count=0)
    assert report.passed, report.counterexamples
    # every a in F_4*, every h of degree <= 2, for k = 1 and k = 5
    assert report.by_field[make_tower(2, 2, 3).describe()] == 2 * 192


def test_trace_general_sweep_with_fifty_instances():
    report = run_sweep("trace-general", max_order=64, seed=5, random_count=50)
    assert report.passed, report.counterexamples
    assert report.total + report.skipped == 50 * len(list(towers(64)))


def test_fibre_checks_cover_shifted_map():
    report = run_sweep("trace-simple", max_order=16, random_count=0)
    # tr(f(x) + x) = h(tr(x)) tr(x) + tr(x), so the criterion applies to f + x too
    admitted = report.total
    assert report.fiber_checked == 2 * admitted
    assert report.fiber_agreements == report.fiber_checked


@pytest.mark.slow
def test_norm_lift_sweep_to_4096():
    report = run_sweep("norm-lift", max_order=4096, seed=0, random_count=100)
    assert report.passed, report.counterexamples
    assert report.agreements == report.total


@pytest.mark.slow
def test_kernel_binomial_sweep_to_4096():
    report = run_sweep("kernel-binomial", max_order=4096)
    assert report.passed, report.counterexamples
