#!/usr/bin/env python
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from core.additive import ResidueSet
from core.arith import largest_prime_leq
from core.errors import (CubeOverflow, ParameterConditionViolated, ParameterError, ParamsTooLarge,
                         TooLarge, TooManyColumns, ZeroTheta)
from core.ripmat import (ConstructionParams, build_frame, build_set_A, build_set_B, coherence,
                         exact_rip_constant, exp_sum_energy_check, flat_rip_constant, gram_closed_form,
                         gram_matrix, inner_product, matrix_coherence, real_embedding, rip_bounds,
                         rip_report, verify_dissociativity)


@pytest.fixture
def small_frame():
    return build_frame(13, [1, 2, 3], [0, 1, 2, 3])


def test_derived_params_need_astronomical_p():
    params = ConstructionParams.derived(1009, 2)
    assert params.L == 1
    assert params.alpha == 1 / 32
    assert params.M_digits == 2 ** 63
    with pytest.raises(ParamsTooLarge):
        build_set_A(1009, params)


def test_override_params_record_violations():
    params = ConstructionParams.override(1009, 2, L=3, U=100, M=2, r=3)
    assert params.mode == "override"
    assert not params.dissociativity_certified
    assert len(params.violations) == 2
    with pytest.raises(ParameterConditionViolated):
        ConstructionParams.override(1009, 2, L=3, U=100, M=2, r=3, strict=True)
    with pytest.raises(CubeOverflow):
        ConstructionParams.override(1009, 2, L=3, U=100, M=4, r=4)


def test_override_rejects_odd_m():
    with pytest.raises(ParameterError):
        ConstructionParams.override(1009, 3, L=3, U=100, M=2, r=3)


def test_build_sets():
    params = ConstructionParams.override(1009, 2, L=3, U=100, M=2, r=3)
    assert build_set_A(1009, params) == [101, 204, 309]
    assert build_set_B(101, ConstructionParams.override(101, 2, L=1, U=0, M=2, r=3)) == \
        [0, 1, 4, 5, 16, 17, 20, 21]
    assert build_set_B(101, ConstructionParams.override(101, 2, L=1, U=0, M=2, r=0)) == [0]


def test_dissociativity_fixtures():
    result = verify_dissociativity([1, 2, 3, 4], 97, 2)
    assert result.passed
    # 每个基点 3^4 个有序四元组，6 个二元多重集
    assert result.tuples_checked == 4 * 3 ** 4
    assert result.multisets_checked == 4 * 6
    result = verify_dissociativity([0, 2, 3, 6], 97, 2)
    assert not result.passed
    assert result.tuples_checked == 0
    # -1/2 - 1/6 = -1/3 - 1/3
    assert result.counterexample["a"] == 0
    assert verify_dissociativity([5], 97, 2).passed


def test_dissociativity_large_prime():
    p = largest_prime_leq(10 ** 14)
    params = ConstructionParams.override(p, 2, L=3, U=3 ** 7, M=2, r=3)
    A = build_set_A(p, params)
    assert A == [2188, 4378, 6570]
    result = verify_dissociativity(A, p, 2)
    assert result.passed
    assert result.tuples_checked == 48
    assert result.to_dict()["multisets_checked"] == 9


def test_dissociativity_too_large():
    with pytest.raises(TooLarge):
        verify_dissociativity(list(range(1, 41)), 1009, 2)


def test_frame_columns_unit_norm(small_frame):
    norms = np.linalg.norm(small_frame.matrix, axis=0)
    assert np.allclose(norms, 1.0, atol=1e-12)
    assert small_frame.columns[:5] == ((1, 0), (1, 1), (1, 2), (1, 3), (2, 0))
    assert not small_frame.matrix.flags.writeable


def test_same_a_columns_orthogonal(small_frame):
    assert abs(inner_product(small_frame, 0, 3)) < 1e-12
    assert inner_product(small_frame, 1, 1) == pytest.approx(1.0)


def test_closed_form_gram_identity():
    frame = build_frame(13, [1, 2], [0, 3])
    # (1,0) 与 (2,3)
    direct = inner_product(frame, 0, 3)
    assert abs(direct - gram_closed_form(13, 1, 0, 2, 3)) < 1e-10


@pytest.mark.slow
@pytest.mark.parametrize("p", [13, 101, 1009])
def test_closed_form_random_pairs(p):
    rng = np.random.default_rng(p)
    x = np.arange(p, dtype=np.int64)
    scale = 1 / math.sqrt(p)
    worst = 0.0
    for _ in range(10_000):
        a1, a2 = (int(v) for v in rng.choice(p, size=2, replace=False))
        b1, b2 = (int(v) for v in rng.integers(0, p, size=2))
        u1 = scale * np.exp(2j * np.pi * ((a1 * x * x + b1 * x) % p) / p)
        u2 = scale * np.exp(2j * np.pi * ((a2 * x * x + b2 * x) % p) / p)
        worst = max(worst, abs(np.vdot(u2, u1) - gram_closed_form(p, a1, b1, a2, b2)))
    assert worst < 1e-9


def test_full_grid_coherence_p5(pool):
    frame = build_frame(5, [1, 2, 3, 4], range(5))
    assert frame.N == 20
    assert coherence(frame, pool) == pytest.approx(1 / math.sqrt(5), abs=1e-12)


def test_full_grid_coherence_p101():
    frame = build_frame(101, range(1, 101), range(101), N=2000)
    assert coherence(frame) == pytest.approx(1 / math.sqrt(101), abs=1e-12)


def test_coherence_trivial_cases():
    assert matrix_coherence(np.eye(4, dtype=np.complex128)) == 0.0
    duplicated = np.ones((3, 2), dtype=np.complex128) / math.sqrt(3)
    assert matrix_coherence(duplicated) == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        matrix_coherence(np.ones((3, 1)))


def test_zero_padding_is_neutral(small_frame):
    padded = build_frame(13, [1, 2, 3], [0, 1, 2, 3], n_rows=20)
    assert padded.matrix.shape == (20, 12)
    assert not padded.matrix[13:].any()
    assert coherence(padded) == coherence(small_frame)
    assert matrix_coherence(padded.matrix) == pytest.approx(coherence(small_frame), abs=1e-15)
    assert flat_rip_constant(padded, 2) == flat_rip_constant(small_frame, 2)


def test_build_frame_errors():
    with pytest.raises(TooManyColumns):
        build_frame(13, [1, 2], [0, 1], N=5)
    with pytest.raises(ParameterError):
        build_frame(13, [1], [0], n_rows=12)
    with pytest.raises(ParameterError):
        build_frame(2, [1], [0])


def test_gram_matrix_hermitian(small_frame):
    gram = gram_matrix(small_frame)
    assert np.array_equal(np.triu(gram, 1), np.tril(gram, -1).conj().T)
    assert np.allclose(np.diag(gram), 1.0)


def test_flat_rip_order_one_is_coherence(small_frame):
    assert flat_rip_constant(small_frame, 1) == coherence(small_frame)


def test_flat_rip_sampled_is_lower_bound(small_frame):
    exhaustive = flat_rip_constant(small_frame, 3)
    sampled = flat_rip_constant(small_frame, 3, mode="sampled", trials=3000, seed=7)
    assert sampled <= exhaustive + 1e-12
    assert sampled == flat_rip_constant(small_frame, 3, mode="sampled", trials=3000, seed=7, threads=4)


def test_flat_rip_too_large():
    frame = build_frame(101, range(1, 11), range(10))
    with pytest.raises(TooLarge):
        flat_rip_constant(frame, 4)


def test_exact_rip_small_orders(small_frame):
    mu = coherence(small_frame)
    assert exact_rip_constant(small_frame, 1) == pytest.approx(0.0, abs=1e-12)
    assert exact_rip_constant(small_frame, 2) == pytest.approx(mu, abs=1e-10)
    assert exact_rip_constant(np.eye(5, dtype=np.complex128), 3) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_exact_rip_below_coherence_bound(k):
    rng = np.random.default_rng(k)
    for _ in range(20):
        p = int(rng.choice([31, 101, 1009]))
        A = sorted(int(a) for a in rng.choice(np.arange(1, p), size=5, replace=False))
        B = sorted(int(b) for b in rng.choice(np.arange(p), size=8, replace=False))
        frame = build_frame(p, A, B, N=int(rng.integers(k + 1, 41)))
        assert exact_rip_constant(frame, k) <= (k - 1) * coherence(frame) + 1e-9


def test_exact_rip_limits(small_frame):
    with pytest.raises(TooLarge):
        exact_rip_constant(build_frame(101, range(1, 11), range(10)), 5)
    with pytest.raises(ParameterError):
        exact_rip_constant(small_frame, 13)


def test_rip_bounds_formulas():
    assert rip_bounds(0.1, 0.0, 5)["from_coherence"] == pytest.approx(0.4)
    bounds = rip_bounds(0.0, 0.01, 1024, 2)
    assert bounds["from_flat"] == pytest.approx(44 * 2 * 0.01 * math.log(1024))
    assert bounds["from_flat_vacuous"]
    assert bounds["from_flat_order"] == 4096
    assert bounds["conversion_regime_ok"]
    assert rip_bounds(0.001, 0.0, 1000)["flat2_hypothesis_ok"]


def test_rip_report(small_frame, pool):
    report = rip_report(small_frame, 3, manager=pool)
    assert report.consistent
    data = report.to_dict()
    assert data["pass"]
    assert data["delta_flat_is_lower_bound"] is False
    assert data["delta_from_coherence"] == pytest.approx(2 * report.mu)


def test_exp_sum_energy_check():
    full = ResidueSet.of(101, range(101))
    report = exp_sum_energy_check(3, full, full, 101)
    assert report["lhs"] == pytest.approx(101 ** 1.5, rel=1e-9)
    assert report["pass"]
    single = ResidueSet.of(101, [7])
    report = exp_sum_energy_check(5, single, ResidueSet.of(101, [9]), 101)
    assert report["lhs"] == pytest.approx(1.0)
    assert report["rhs"] == pytest.approx(101 ** 0.125)
    with pytest.raises(ZeroTheta):
        exp_sum_energy_check(101, single, single, 101)


def test_exp_sum_random_sets():
    rng = np.random.default_rng(1009)
    for _ in range(20):
        B1 = ResidueSet.of(1009, rng.integers(0, 1009, size=int(rng.integers(1, 60))))
        B2 = ResidueSet.of(1009, rng.integers(0, 1009, size=int(rng.integers(1, 60))))
        theta = int(rng.integers(1, 1009))
        assert exp_sum_energy_check(theta, B1, B2, 1009)["pass"]


def test_real_embedding_preserves_gram(small_frame):
    real = real_embedding(small_frame)
    gram = gram_matrix(small_frame)
    assert real.shape == (26, 24)
    assert np.allclose(real.T @ real, np.block([[gram.real, -gram.imag], [gram.imag, gram.real]]))


def test_flat_rip_order_above_column_count():
    frame = build_frame(13, [1, 2], [0, 1, 2])
    assert flat_rip_constant(frame, 9) == flat_rip_constant(frame, 5)
    report = rip_report(frame, 6)
    assert report.flat_order == 5
    assert report.to_dict()["flat_order"] == 5
    assert any("k = 5" in note for note in report.notes)
    assert rip_report(frame, 3).to_dict()["flat_order"] == 3
