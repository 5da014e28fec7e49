# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
import itertools

import numpy as np
import pytest

from cppforge import FieldMismatch, HypothesisFails, PreconditionViolated
from cppforge.config import get_settings
from cppforge.cpp_search import enumerate_complete_mappings, to_h_form
from cppforge.field_maps import PPoly
from cppforge.gf_core import make_tower
from cppforge.lift_constructions import (binary_monomial_construct, check_kernel_hypothesis,
                                         general_trace_table, kernel_shifts, monomial_cpp_check,
                                         norm_lift, norm_permutation_criterion,
                                         trace_identity_holds, trace_lift_binomial,
                                         trace_lift_general, trace_lift_simple,
                                         trace_permutation_lift)
from cppforge.perm_check import is_cpp, is_permutation
from cppforge.polynomial import Poly


@pytest.fixture
def small_expand_limit(monkeypatch):
    monkeypatch.setenv("CPPFORGE_EXPAND_LIMIT", "8")
    get_settings.cache_clear()
    yield
    monkeypatch.delenv("CPPFORGE_EXPAND_LIMIT")
    get_settings.cache_clear()


def test_trace_binomial_over_f64(F64_over_F4):
    result = trace_lift_binomial(Poly(F64_over_F4.base, [2]), 1, 2, F64_over_F4)
    assert result.predicted_cpp is True
    assert all(holds for _, holds in result.preconditions)
    assert result.identity_holds
    assert result.verify()
    assert result.checks["expanded_matches_composite"]
    assert result.agrees
    report = result.to_dict()
    assert report["construction"] == "trace-binomial"
    assert report["params"]["k"] == 1
    assert report["verified_cpp"] is True
    assert report["subfield_witness"] == [[1, 2]]


@pytest.mark.parametrize("n,k", [(2, 1), (3, 3)])
def test_trace_binomial_preconditions(n, k):
    tower = make_tower(2, 2, n)
    with pytest.raises(PreconditionViolated):
        trace_lift_binomial(Poly(tower.base, [2]), k, 2, tower)


def test_norm_lift_needs_coprime_n(F64_over_F4):
    with pytest.raises(PreconditionViolated) as err:
        norm_lift(Poly(F64_over_F4.base, [1]), F64_over_F4)
    assert "gcd(n, q-1) = 1" in str(err.value)


def test_norm_lift_of_constant(F27_over_F3):
    for c, expected in ((1, True), (2, False)):
        result = norm_lift(Poly(F27_over_F3.base, [c]), F27_over_F3)
        assert result.predicted_cpp is expected
        assert result.verify() is expected


def test_norm_lift_from_complete_mappings_of_f8(F64_over_F8):
    mappings = enumerate_complete_mappings(F64_over_F8.base)
    assert mappings
    for mapping in mappings[:12]:
        h = to_h_form(mapping.poly, 2)
        result = norm_lift(h, F64_over_F8)
        assert result.predicted_cpp is True
        assert result.verify() is True


def test_norm_lift_rejects_tower_polynomial(F64_over_F8):
    with pytest.raises(FieldMismatch):
        norm_lift(Poly.x(F64_over_F8), F64_over_F8)


def test_norm_criterion_against_direct_check(F64_over_F8):
    base = F64_over_F8.base
    h = Poly(base, [1, 1])
    direct = is_permutation(Poly.from_terms(F64_over_F8, {12: 1, 3: 1})).is_permutation
    assert norm_permutation_criterion(3, h, F64_over_F8) == direct
    assert norm_permutation_criterion(1, Poly(base, [5]), F64_over_F8)


def test_norm_criterion_sweep(F64_over_F8):
    base = F64_over_F8.base
    for coeffs in itertools.product(range(8), repeat=2):
        h = Poly(base, coeffs)
        if h.is_zero():
            continue
        lifted_h = h.embed(F64_over_F8).compose_monomial(9)
        for exp_r in range(1, 6):
            f = lifted_h.shift(exp_r)
            assert norm_permutation_criterion(exp_r, h, F64_over_F8) == is_permutation(f).is_permutation


def test_monomial_check_s1(F64_over_F8):
    for alpha in range(1, 8):
        result = monomial_cpp_check(alpha, 1, F64_over_F8)
        assert result.params["exponent"] == 10
        assert result.subfield_witness.coeffs == (0, 0, 0, alpha)
        assert result.verify() == result.predicted_cpp
        assert result.checks["alternative_form"] == result.predicted_cpp


def test_monomial_check_s3(F64_over_F8):
    result = monomial_cpp_check(3, 3, F64_over_F8)
    assert result.params["exponent"] == 28
    assert result.subfield_witness.degree == 7
    assert result.verify() == result.predicted_cpp


def test_monomial_check_s0(F27_over_F3):
    assert monomial_cpp_check(1, 0, F27_over_F3).predicted_cpp is True
    assert monomial_cpp_check(2, 0, F27_over_F3).predicted_cpp is False
    with pytest.raises(PreconditionViolated):
        monomial_cpp_check(0, 0, F27_over_F3)


def test_binary_monomial_exponent_and_verdict():
    valid = 0
    for alpha in range(2, 16):
        try:
            result = binary_monomial_construct(1, 4, 2, alpha)
        except PreconditionViolated:
            continue
        valid += 1
        assert result.params["exponent"] == 409
        assert result.tower.order == 256
        assert result.checks["witness_cpp"]
        assert result.checks["proof_witness_permutes"]
        assert result.verify() is True
    # the non-cubes of F_16
    assert valid == 10


def test_binary_monomial_rejects_one():
    with pytest.raises(PreconditionViolated):
        binary_monomial_construct(1, 4, 2, 1)


def test_binary_monomial_needs_shared_factor():
    with pytest.raises(PreconditionViolated):
        binary_monomial_construct(1, 4, 1, 2)
    with pytest.raises(PreconditionViolated):
        binary_monomial_construct(1, 2, 2, 2)


def test_trace_simple_constant(F25_over_F5):
    result = trace_lift_simple(Poly(F25_over_F5.base, [2]), F25_over_F5)
    assert result.predicted_cpp is True
    assert result.verify() is True
    assert np.array_equal(result.composite_table(), np.asarray(F25_over_F5.mul(2, F25_over_F5.codes())))


def test_trace_simple_rejects_minus_one(F25_over_F5):
    with pytest.raises(PreconditionViolated):
        trace_lift_simple(Poly(F25_over_F5.base, [4, 1]), F25_over_F5)
    with pytest.raises(PreconditionViolated):
        trace_lift_simple(Poly(F25_over_F5.base, [0, 1]), F25_over_F5)


def test_trace_simple_sweep_degree_two(F25_over_F5):
    base = F25_over_F5.base
    cases = 0
    for h0, h1, h2 in itertools.product((1, 2, 3), range(5), range(5)):
        result = trace_lift_simple(Poly(base, [h0, h1, h2]), F25_over_F5)
        result.verify()
        assert result.agrees, result.params
        cases += 1
    assert cases == 75


def test_trace_perm_lift(F25_over_F5):
    base = F25_over_F5.base
    result = trace_permutation_lift(Poly(base, [1, 1]), F25_over_F5)
    assert result.predicted_permutation is False
    result.verify()
    assert result.verified_permutation is False
    assert result.agrees
    assert "predicted_permutation" in result.to_dict()
    result = trace_permutation_lift(Poly(base, [4]), F25_over_F5)
    result.verify()
    assert result.predicted_permutation and result.verified_permutation
    with pytest.raises(PreconditionViolated):
        trace_permutation_lift(Poly(base, [0, 1]), F25_over_F5)


def test_general_lift_degenerates_to_simple(F25_over_F5):
    h = Poly(F25_over_F5.base, [2])
    L = PPoly.from_dict(F25_over_F5, {0: 3})
    general = trace_lift_general(h, L, 1, F25_over_F5)
    simple = trace_lift_simple(h, F25_over_F5)
    assert np.array_equal(general.composite_table(), simple.composite_table())
    assert general.predicted_cpp == simple.predicted_cpp
    assert general.verify() == simple.verify()
    assert general.notes == []


def test_general_lift_with_frobenius_head(F64_over_F4):
    h = Poly(F64_over_F4.base, [2])
    L = PPoly.binomial_head(F64_over_F4, 1)
    result = trace_lift_general(h, L, 2, F64_over_F4)
    assert result.predicted_cpp is True
    assert result.verify() is True
    assert result.notes
    binomial = trace_lift_binomial(h, 1, 2, F64_over_F4)
    assert np.array_equal(result.composite_table(), binomial.composite_table())


def test_general_lift_hypothesis_fails(F16_over_F4):
    h = Poly(F16_over_F4.base, [2])
    L = PPoly.binomial_head(F16_over_F4, 1)
    with pytest.raises(HypothesisFails) as err:
        trace_lift_general(h, L, 2, F16_over_F4)
    assert err.value.b == 0
    with pytest.raises(HypothesisFails):
        check_kernel_hypothesis(h, L, 2)


def test_general_lift_needs_nonzero_a(F64_over_F4):
    h = Poly(F64_over_F4.base, [2])
    with pytest.raises(PreconditionViolated):
        trace_lift_general(h, PPoly.binomial_head(F64_over_F4, 1), 0, F64_over_F4)


def test_kernel_shifts(F64_over_F4):
    h = Poly(F64_over_F4.base, [2])
    shifts = kernel_shifts(h, PPoly.binomial_head(F64_over_F4, 1), 2)
    # A(b) = b, h(b)/2 = 1, (h(b)+1)/2 = 3/2 = 2
    assert shifts == [(0, 1, 2), (1, 0, 3), (2, 3, 0), (3, 2, 1)]


def test_trace_identity_without_hypothesis(F64_over_F4, F16_over_F4):
    for tower in (F64_over_F4, F16_over_F4):
        h = Poly(tower.base, [1, 2, 3])
        L = PPoly.from_dict(tower, {0: 1, 1: 3})
        assert trace_identity_holds(h, L, 2)
        table = general_trace_table(h, L, 2)
        assert table.shape == (tower.order,)


def test_expanded_form_skipped_above_limit(F64_over_F8, small_expand_limit):
    result = monomial_cpp_check(2, 1, F64_over_F8)
    assert not result.expandable
    assert result.to_dict()["lifted"] is None
    assert result.to_dict()["lifted_degree"] == 10
    assert result.verify() == result.predicted_cpp
    assert "expanded_matches_composite" not in result.checks


def test_lifted_is_built_on_demand(F64_over_F8):
    result = monomial_cpp_check(2, 1, F64_over_F8)
    assert result.lifted.coeffs == (0,) * 10 + (2,)
    assert is_cpp(result.lifted) == result.predicted_cpp


def test_trace_binomial_grid_over_f64(F64_over_F4):
    base = F64_over_F4.base
    cases = 0
    for a in range(1, 4):
        for coeffs in itertools.product(range(4), repeat=3):
            h = Poly(base, coeffs)
            result = trace_lift_binomial(h, 1, a, F64_over_F4)
            assert result.identity_holds
            result.verify(check_expanded=False)
            assert result.verified_cpp == is_cpp(h.shift(1)), (a, coeffs)
            assert result.agrees
            cases += 1
    assert cases == 192


def test_trace_binomial_keeps_large_k(F64_over_F4):
    h = Poly(F64_over_F4.base, [2])
    large = trace_lift_binomial(h, 7, 2, F64_over_F4)
    small = trace_lift_binomial(h, 1, 2, F64_over_F4)
    assert large.params["k"] == 7
    assert "x^(p^7) acts on F_64 as x^(p^1)" in large.notes
    assert not any("acts on" in note for note in small.notes)
    assert np.array_equal(large.composite_table(), small.composite_table())


def test_trace_identity_on_seeded_general_instances(F64_over_F4):
    rng = np.random.default_rng(50)
    base = F64_over_F4.base
    for _ in range(50):
        size = int(rng.integers(1, 4))
        indices = rng.choice(F64_over_F4.total_degree, size=size, replace=False)
        L = PPoly.from_dict(F64_over_F4, {int(i): int(rng.integers(1, 4)) for i in indices})
        h = Poly(base, rng.integers(0, 4, size=3).tolist())
        a = int(rng.integers(1, 4))
        assert trace_identity_holds(h, L, a), (h.coeffs, L.describe(), a)
