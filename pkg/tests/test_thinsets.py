#!/usr/bin/env python
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from core.arith import primes_in_dyadic, smallest_prime_geq
from core.errors import (ModulusTooSmall, ParameterConditionViolated, TooLarge,
                         UnequalStageSizes)
from core.thinsets import (ResidueMultiset, build_stage_set, check_distinctness, compose_thin_set,
                           composition_bound, construct_thin_set, find_collision,
                           fourier_max_profile, one_iteration_params, stage_integers,
                           stage_repetition_threshold, two_stage_params, w_bound)


def test_multiset_merges_and_counts():
    S = ResidueMultiset.of(10, [3, 13, -7, 4])
    assert S.values == (3, 4)
    assert S.counts == (3, 1)
    assert S.size == 4
    assert not S.is_set
    assert ResidueMultiset.from_dict(S.to_dict()) == S
    union = S.union(ResidueMultiset.of(10, [4, 5]))
    assert union.counts == (3, 2, 1)


def test_multiset_centered_lift():
    S = ResidueMultiset.of(11, [1, 6, 10])
    assert list(S.centered()) == [1, -5, -1]


def test_profile_of_interval():
    profile = fourier_max_profile(ResidueMultiset.of(16, range(4)))
    expected = abs(math.sin(4 * math.pi / 16) / (4 * math.sin(math.pi / 16)))
    assert profile.max_normalized == pytest.approx(expected, rel=1e-12)
    assert profile.argmax_k in (1, 15)


def test_profile_trivial_sets():
    assert fourier_max_profile(ResidueMultiset.of(17, range(17))).max_normalized < 1e-12
    assert fourier_max_profile(ResidueMultiset.of(17, [0])).max_normalized == pytest.approx(1.0)


def test_profile_matches_direct_sum(pool):
    rng = np.random.default_rng(5)
    N = 211
    values = rng.integers(0, N, size=40)
    S = ResidueMultiset.of(N, values)
    profile = fourier_max_profile(S, keep_magnitudes=True, manager=pool)
    direct = [abs(np.exp(2j * np.pi * k * values / N).sum()) / 40 for k in range(1, N)]
    assert profile.max_normalized == pytest.approx(max(direct), abs=1e-10)
    assert np.allclose(profile.magnitudes, direct, atol=1e-10)
    # |f_S(k)| = |f_S(N-k)|
    assert np.allclose(profile.magnitudes, profile.magnitudes[::-1], atol=1e-12)


def test_profile_sampled_is_lower_bound():
    S = ResidueMultiset.of(1009, [1, 5, 17, 300, 301, 777])
    full = fourier_max_profile(S)
    sampled = fourier_max_profile(S, scan="sampled", count=200, seed=3)
    assert sampled.lower_bound
    assert sampled.max_normalized <= full.max_normalized + 1e-12
    assert sampled.to_dict()["samples"] == 200


def test_profile_thread_independent():
    S = ResidueMultiset.of(2003, np.arange(0, 2003, 7))
    assert fourier_max_profile(S, threads=1).to_dict() == fourier_max_profile(S, threads=4).to_dict()


def test_profile_too_large():
    with pytest.raises(TooLarge):
        fourier_max_profile(ResidueMultiset.of(10 ** 10 + 19, [0, 1, 2]))


def test_triangle_inequality_on_unions():
    rng = np.random.default_rng(11)
    for _ in range(5):
        S1 = ResidueMultiset.of(101, rng.integers(0, 101, size=12))
        S2 = ResidueMultiset.of(101, rng.integers(0, 101, size=9))
        union = S1.union(S2)
        f1, f2, fu = (fourier_max_profile(S).max_normalized for S in (S1, S2, union))
        assert fu * union.size <= f1 * S1.size + f2 * S2.size + 1e-9


def test_stage_integers_variants():
    assert list(stage_integers(7)) == [-3, -2, -1, 1, 2, 3]
    assert list(stage_integers(7, "all_integers")) == [-3, -2, -1, 0, 1, 2, 3]


def test_stage_example_mod_101():
    stage = build_stage_set(101, 10, 1)
    assert stage.multiset.values == (15, 30, 44, 59, 73, 88)
    assert stage.certificate.distinct
    assert stage.certificate.stage1_eps == pytest.approx(15 * math.log(101) / 10)
    assert not stage.certificate.flags["stage_prime_floor"]
    assert not stage.certificate.certified


def test_stage_size_counts_multiplicity():
    stage = build_stage_set(1009, 20, 3)
    expected = 3 * sum(p - 1 for p in primes_in_dyadic(20))
    assert stage.multiset.size == expected == stage.certificate.size


def test_stage_all_integers_uses_w_bound():
    stage = build_stage_set(1009, 20, 2, variant="all_integers")
    V = len(primes_in_dyadic(20))
    assert stage.multiset.size == 2 * sum(primes_in_dyadic(20))
    assert stage.certificate.w_bound == pytest.approx(w_bound(1009, 20, 2, V))
    assert stage.certificate.bound == stage.certificate.w_bound
    assert stage.certificate.within_bound


def test_stage_modulus_too_small():
    with pytest.raises(ModulusTooSmall):
        build_stage_set(7, 10, 1)


def test_distinctness():
    family = {7: [-3, -2, -1, 1, 2, 3]}
    assert check_distinctness(1, 10, family, 101)
    assert check_distinctness(1, 10, {7: [2]}, 11)


def test_constructed_collision():
    family = {7: [-3, 1]}
    # 7^{-1} ≡ 8 (mod 11)：1 - 3·8 ≡ 2 + 8 ≡ 10
    collision = find_collision(2, 10, family, 11)
    assert collision["value"] == 10
    assert sorted([collision["first"], collision["second"]]) == [[1, 7, -3], [2, 7, 1]]
    assert not check_distinctness(2, 10, family, 11)


def test_distinctness_random_above_threshold():
    rng = np.random.default_rng(81)
    for _ in range(10):
        R = int(rng.integers(1, 4))
        P = int(rng.integers(8, 30))
        q = smallest_prime_geq(R * P * P).p
        family = {p: stage_integers(p) for p in primes_in_dyadic(P)}
        assert check_distinctness(R, P, family, q)


def test_parameter_formulas():
    P, R = one_iteration_params(10007, 0.5)
    assert P == pytest.approx(30 * math.log(10007))
    assert R == 3
    params = two_stage_params(10007, 0.5)
    assert params["R1"] == 8
    assert params["P1"] == pytest.approx(16 * math.log(10007))
    assert params["P0"] == pytest.approx(90 * math.log(params["P1"]))
    assert stage_repetition_threshold(250, 999983) < 2


@pytest.fixture(scope="module")
def toy_stages():
    stages = {q: build_stage_set(q, 20, 2).multiset for q in primes_in_dyadic(60)}
    return stages


def test_compose_toy_run(toy_stages):
    N = smallest_prime_geq(2 * 60 * 60).p
    result = compose_thin_set(N, 60, 2, toy_stages)
    cert = result.certificate
    assert cert.V1 == 7
    assert result.multiset.size == 2 * 7 * 112
    assert cert.flags["distinctness_range"]
    assert cert.composed_bound == pytest.approx(composition_bound(cert.stage_eps_measured, 2, N, 7, 60))
    assert cert.measured <= cert.composed_bound + 1e-9


def test_compose_rejects_bad_inputs(toy_stages):
    with pytest.raises(ModulusTooSmall):
        compose_thin_set(59, 60, 2, toy_stages)
    uneven = dict(toy_stages)
    q = min(uneven)
    uneven[q] = uneven[q].union(ResidueMultiset.of(q, [0]))
    with pytest.raises(UnequalStageSizes):
        compose_thin_set(7207, 60, 2, uneven)


def test_two_stage_explicit_parameters():
    result = construct_thin_set(7207, P0=20, P1=60, R0=2, R1=2)
    cert = result.certificate
    assert cert.mode == "two_stage"
    assert cert.size == 1568
    assert cert.V0 == 4
    assert not cert.flags["stage_prime_floor"]
    assert not cert.certified
    assert cert.within_bound


def test_strict_two_stage_density_violation():
    with pytest.raises(ParameterConditionViolated) as info:
        construct_thin_set(10007, mu=0.5, strict=True)
    assert any("L₂⁴/L₁" in v for v in info.value.violations)


def test_strict_requires_reciprocal_mu():
    with pytest.raises(ParameterConditionViolated) as info:
        construct_thin_set(10007, mu=0.3, strict=True)
    assert any("不是整数" in v for v in info.value.violations)


def test_one_iteration_sampled_smoke():
    result = construct_thin_set(1000003, mode="one_iteration", P=250, R=2,
                                scan="sampled", count=500, seed=1)
    cert = result.certificate
    assert cert.size == 2 * sum(p - 1 for p in primes_in_dyadic(250))
    assert cert.distinct
    assert cert.flags["stage_prime_floor"] and cert.flags["stage_repetition"]
    assert cert.stage1_eps == pytest.approx(0.8289, abs=1e-4)
    assert cert.measured <= cert.stage1_eps
    assert not cert.certified


@pytest.mark.slow
def test_one_iteration_full_scan():
    result = construct_thin_set(1000003, mode="one_iteration", P=250, R=2, threads=8)
    assert result.certificate.certified


@pytest.mark.slow
def test_composition_at_p1_200():
    N = smallest_prime_geq(4 * 200 * 200).p
    stages = {q: build_stage_set(q, 20, 2).multiset for q in primes_in_dyadic(200)}
    result = compose_thin_set(N, 200, 4, stages, threads=8)
    assert result.certificate.flags["distinctness_range"]
    assert result.certificate.within_bound
