#!/usr/bin/env python
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from core.arith import primes_in_dyadic
from core.errors import ParameterConditionViolated, ParameterError, TooLarge
from core.thinsets import ResidueMultiset, fourier_max_profile
from core.turan import (TuranPointSet, construct_turan, er_reference_bound, points_from_thin_set,
                        power_sum_max, turan_frame)


def test_point_set_normalises():
    z = TuranPointSet.of([(4, 3, 1), (1, 3, 2), (0, 1, 1)])
    assert z.points == ((0, 1, 1), (1, 3, 3))
    assert z.n == 4
    assert TuranPointSet.from_dict(z.to_dict()) == z
    with pytest.raises(ParameterError):
        TuranPointSet(((3, 3, 1),))


def test_power_sum_trivial_cases():
    ones = TuranPointSet.of([(0, 1, 5)])
    result = power_sum_max(ones, 10, keep_profile=True)
    assert result["M"] == pytest.approx(5.0)
    assert np.allclose(result["profile"], 5.0)

    assert power_sum_max(TuranPointSet.of([(1, 3, 1)]), 100)["M"] == pytest.approx(1.0)


def test_power_sum_roots_of_unity():
    N = 12
    z = TuranPointSet.of((s, N, 1) for s in range(N))
    result = power_sum_max(z, N, keep_profile=True)
    assert result["M"] == pytest.approx(N)
    assert result["argmax_k"] == N
    assert np.all(result["profile"][:-1] < 1e-9)


def test_power_sum_matches_direct(pool):
    rng = np.random.default_rng(3)
    triples = [(int(rng.integers(0, q)), q, int(rng.integers(1, 3))) for q in (7, 11, 13, 101, 997)]
    z = TuranPointSet.of(triples)
    N = 400
    result = power_sum_max(z, N, keep_profile=True, manager=pool)
    s = np.array([p[0] for p in z.points])
    q = np.array([p[1] for p in z.points])
    m = np.array([p[2] for p in z.points])
    direct = [abs((m * np.exp(2j * np.pi * ((k * s) % q) / q)).sum()) for k in range(1, N + 1)]
    assert np.allclose(result["profile"], direct, atol=1e-9)
    assert result["M"] == pytest.approx(max(direct), abs=1e-9)


def test_power_sum_limits():
    with pytest.raises(ParameterError):
        power_sum_max(TuranPointSet.of([(0, 1, 1)]), 0)
    big = TuranPointSet.of((s, 1000003, 1) for s in range(20000))
    with pytest.raises(TooLarge):
        power_sum_max(big, 10 ** 6)


def test_er_reference_bound():
    assert er_reference_bound(1, 1) == pytest.approx(math.sqrt(6 * math.log(2)))
    assert er_reference_bound(100, 10 ** 6) == pytest.approx(91.04, abs=0.01)
    assert er_reference_bound(10, 100) < er_reference_bound(11, 100) < er_reference_bound(11, 101)


def test_points_from_thin_set():
    S = ResidueMultiset.of(101, [1, 5, 5, 30, 77])
    z = points_from_thin_set(S)
    assert z.n == S.size
    M = power_sum_max(z, 100)["M"]
    assert M / z.n == pytest.approx(fourier_max_profile(S).max_normalized, abs=1e-12)


def test_turan_frame_bridge():
    rng = np.random.default_rng(8)
    for _ in range(10):
        n = int(rng.integers(2, 65))
        triples = []
        for _ in range(n):
            q = int(rng.choice([1, 2, 7, 31, 97, 101, 509]))
            triples.append((int(rng.integers(0, q)), q, 1))
        z = TuranPointSet.of(triples)
        N = int(rng.integers(2, 513))
        frame = turan_frame(z, N)
        assert frame.matrix.shape == (n, N)
        assert np.allclose(np.linalg.norm(frame.matrix, axis=0), 1.0)
        assert abs(frame.coherence - power_sum_max(z, N - 1)["M"] / n) <= 1e-9
        assert frame.agrees


def test_turan_frame_orthogonal_dft():
    z = TuranPointSet.of((s, 16, 1) for s in range(16))
    frame = turan_frame(z, 16)
    assert frame.coherence < 1e-12
    assert frame.power_sum_coherence < 1e-12


def test_turan_frame_too_large():
    with pytest.raises(TooLarge):
        turan_frame(TuranPointSet.of([(0, 1, 10 ** 4)]), 2000)


@pytest.fixture(scope="module")
def toy_turan():
    return construct_turan(5000, P0=20, P1=900, R0=2)


def test_construct_turan_counting(toy_turan):
    cert = toy_turan.certificate
    assert cert.V1 == len(primes_in_dyadic(900))
    assert cert.S == 2 * sum(p - 1 for p in primes_in_dyadic(20))
    assert toy_turan.points.n == cert.V1 * cert.S == cert.n


def test_construct_turan_certificate(toy_turan):
    cert = toy_turan.certificate
    assert cert.flags["stage_separation"]
    assert not cert.flags["stage_prime_floor"]
    assert cert.divisor_term == pytest.approx(math.log(5000) / (cert.V1 * math.log(450)))
    assert cert.within_bound
    assert cert.er_bound == pytest.approx(er_reference_bound(cert.n, 5000))
    data = toy_turan.to_dict()
    assert data["N"] == 5000
    assert data["certificate"]["bound"] == pytest.approx(cert.stage_eps + cert.divisor_term)


def test_strict_turan_stage_separation():
    with pytest.raises(ParameterConditionViolated) as info:
        construct_turan(5000, P0=20, P1=800, R0=2, strict=True)
    assert any("2·P0²" in v for v in info.value.violations)


def test_strict_turan_density():
    with pytest.raises(ParameterConditionViolated) as info:
        construct_turan(10007, mu=0.5, strict=True)
    assert any("L₂³/L₁" in v for v in info.value.violations)


@pytest.mark.slow
def test_turan_desk_scale_run():
    result = construct_turan(10 ** 5, P0=50, P1=6000, R0=2, threads=8)
    assert result.certificate.within_bound
