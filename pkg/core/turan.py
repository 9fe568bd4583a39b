#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Turán 幂和问题的显式点集
点 z = e(s/q) 以精确有理相位 (s, q) 存储，幂和按 q 分组查表计算
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from core.arith import mulmod_array, primes_in_dyadic
from core.config import scan_setting
from core.errors import ParameterError, StageSizeMismatch, TooLarge
from core.ripmat import matrix_coherence
from core.scan_manager import ScanManager, get_manager, split_range
from core.thinsets import (ResidueMultiset, finish_flags, is_reciprocal_integer,
                           build_stage_set, density_ratio, two_stage_params)

logger = logging.getLogger(__name__)

POWER_SUM_LIMIT = 10 ** 10
FRAME_LIMIT = 10 ** 7
TOLERANCE = 1e-9


@dataclass(frozen=True)
class TuranPointSet:
    """多重点集 {(s, q, 重数)}，按 (q, s) 升序"""

    points: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        for s, q, mult in self.points:
            if q < 1 or not 0 <= s < q or mult < 1:
                raise ParameterError(f"非法点 ({s}, {q}, {mult})")

    @classmethod
    def of(cls, triples: Iterable[Tuple[int, int, int]]) -> "TuranPointSet":
        """s 约化到 [0, q)，相同的 (s, q) 合并重数"""
        merged: Dict[Tuple[int, int], int] = defaultdict(int)
        for s, q, mult in triples:
            q = int(q)
            if q < 1:
                raise ParameterError(f"q 必须 >= 1: {q}")
            merged[(int(s) % q, q)] += int(mult)
        ordered = sorted(merged.items(), key=lambda item: (item[0][1], item[0][0]))
        return cls(tuple((s, q, m) for (s, q), m in ordered))

    @property
    def n(self) -> int:
        return int(sum(m for _, _, m in self.points))

    def by_modulus(self) -> Dict[int, Tuple[np.ndarray, np.ndarray]]:
        """按 q 分组：q -> (s 数组, 重数数组)"""
        groups: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
        for s, q, mult in self.points:
            groups[q].append((s, mult))
        return {q: (np.array([s for s, _ in items], dtype=np.int64),
                    np.array([m for _, m in items], dtype=np.float64))
                for q, items in sorted(groups.items())}

    def to_dict(self) -> Dict[str, Any]:
        return {"points": [list(p) for p in self.points]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TuranPointSet":
        return cls.of((int(s), int(q), int(m)) for s, q, m in data["points"])


@dataclass
class TuranCertificate:
    """Turán 点集证书：measured = M_N(z)/n <= stage_eps + log N / (V1 log(P1/2))"""

    N: int
    P0: float
    P1: float
    R0: int
    V1: int
    S: int
    n: int
    stage_eps: float
    divisor_term: float
    measured: float
    argmax_k: int
    variant: str = "nonzero"
    mu: Optional[float] = None
    stage1_eps: Optional[float] = None
    size_bound: Optional[float] = None
    er_bound: Optional[float] = None
    flags: Dict[str, bool] = field(default_factory=dict)

    @property
    def bound(self) -> float:
        return self.stage_eps + self.divisor_term

    @property
    def within_bound(self) -> bool:
        return self.measured <= self.bound + TOLERANCE

    @property
    def certified(self) -> bool:
        return self.within_bound and all(self.flags.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N, "P0": self.P0, "P1": self.P1, "R0": self.R0,
            "V1": self.V1, "S": self.S, "n": self.n,
            "variant": self.variant,
            "mu": self.mu,
            "stage_eps": self.stage_eps,
            "stage1_eps": self.stage1_eps,
            "divisor_term": self.divisor_term,
            "bound": self.bound,
            "measured": self.measured,
            "argmax_k": self.argmax_k,
            "size_bound": self.size_bound,
            "er_bound": self.er_bound,
            "flags": dict(self.flags),
            "within_bound": self.within_bound,
            "certified": self.certified,
        }


@dataclass
class TuranConstruction:
    """构造结果"""

    points: TuranPointSet
    certificate: TuranCertificate

    def to_dict(self) -> Dict[str, Any]:
        data = self.points.to_dict()
        data["N"] = self.certificate.N
        data["certificate"] = self.certificate.to_dict()
        return data


@dataclass
class TuranFrame:
    """n×N 矩阵，列为 n^{-1/2}(z_j^{k-1})_j，附带两种相干性"""

    matrix: np.ndarray
    coherence: float
    power_sum_coherence: float

    @property
    def agrees(self) -> bool:
        return abs(self.coherence - self.power_sum_coherence) <= TOLERANCE


def _phase_table(s: np.ndarray, weights: np.ndarray, q: int, length: int) -> np.ndarray:
    """table[t] = Σ_j w_j e(t s_j / q)，t = 0..length-1，相位 t·s mod q 精确约化"""
    t = np.arange(length, dtype=np.int64)
    phases = mulmod_array(t[:, None], s[None, :], q).astype(np.float64) * (2 * math.pi / q)
    return (np.cos(phases) @ weights) + 1j * (np.sin(phases) @ weights)


def power_sum_cost(z: TuranPointSet, N: int) -> int:
    """查表法的计算量 Σ_q min(q, N+1)·|S_q| + N·#q"""
    groups = z.by_modulus()
    return sum(min(q, N + 1) * len(s) for q, (s, _) in groups.items()) + N * len(groups)


def power_sum_max(z: TuranPointSet, N: int, keep_profile: bool = False,
                  manager: Optional[ScanManager] = None,
                  threads: Optional[int] = None) -> Dict[str, Any]:
    """
    M_N(z) = max_{1<=k<=N} |Σ_j z_j^k|
    每个 q 的贡献只依赖 k mod q，先建周期表再按 k 分块累加
    :param keep_profile: 返回每个 k 的 |Σ z_j^k|
    :return: {"M", "argmax_k", "n", "profile"}
    """
    N = int(N)
    if N < 1:
        raise ParameterError(f"N 必须 >= 1: {N}")
    if not z.points:
        raise ParameterError("点集为空")
    cost = power_sum_cost(z, N)
    if cost > POWER_SUM_LIMIT:
        raise TooLarge("power_sum_max", cost, POWER_SUM_LIMIT)

    tables = {q: _phase_table(s, w, q, min(q, N + 1)) for q, (s, w) in z.by_modulus().items()}

    def evaluate(block: range):
        ks = np.arange(block.start, block.stop, dtype=np.int64)
        total = np.zeros(ks.size, dtype=np.complex128)
        for q, table in tables.items():
            index = ks % q if q <= N else ks
            total += table[index]
        magnitude = np.abs(total)
        best = int(np.argmax(magnitude))
        return float(magnitude[best]), int(ks[best]), (magnitude if keep_profile else None)

    manager = get_manager(manager, threads)
    results = manager.run_blocks(evaluate, split_range(1, N + 1, scan_setting("sample_chunk")))
    best_value, best_k = -1.0, 0
    for value, k, _ in results:
        if value > best_value:
            best_value, best_k = value, k
    profile = np.concatenate([r[2] for r in results]) if keep_profile else None
    return {"M": best_value, "argmax_k": best_k, "n": z.n, "profile": profile}


def er_reference_bound(n: int, N: int) -> float:
    """随机点集的参考值 √(6n·log(N+1))"""
    if n < 1 or N < 1:
        raise ParameterError(f"n、N 必须 >= 1: n={n}, N={N}")
    return math.sqrt(6 * n * math.log(N + 1))


def turan_size_bound(R0: int, P0: float, P1: float) -> float:
    """n <= 0.76²·R0·P1·P0² / (log P0 · log P1)"""
    return 0.76 ** 2 * R0 * P1 * P0 * P0 / (math.log(P0) * math.log(P1))


def points_from_thin_set(S: ResidueMultiset) -> TuranPointSet:
    """z_j = e(t_j / N)，此时 M_{N-1}(z) <= n·|f_S|"""
    return TuranPointSet.of((v, S.modulus, c) for v, c in zip(S.values, S.counts))


def construct_turan(N: int, mu: Optional[float] = None, P0: Optional[float] = None,
                    P1: Optional[float] = None, R0: Optional[int] = None,
                    strict: bool = False, variant: str = "nonzero",
                    manager: Optional[ScanManager] = None,
                    threads: Optional[int] = None) -> TuranConstruction:
    """
    对 (P1/2, P1] 内每个素数 q 构造 S_q = build_stage_set(q, P0, R0)，
    点集为 {e(s/q) : s ∈ S_q} 的多重集并
    :param mu: 给定时按 μ 推出 P0、P1、R0（显式参数优先）
    :param strict: 条件不成立时抛出 ParameterConditionViolated
    """
    N = int(N)
    if N < 1:
        raise ParameterError(f"N 必须 >= 1: {N}")
    if mu is not None:
        if mu <= 0:
            raise ParameterError(f"μ 必须为正: {mu}")
        derived = two_stage_params(max(N, 3), mu)
        P0 = derived["P0"] if P0 is None else P0
        P1 = derived["P1"] if P1 is None else P1
        R0 = derived["R0"] if R0 is None else R0
    if None in (P0, P1, R0):
        raise ParameterError("需要 μ 或 (P0, P1, R0)")
    R0 = int(R0)

    threshold = 1 + math.log(1 + 0.26 * P0 / math.log(P1)) / 2
    flags = {
        "stage_prime_floor": P0 >= 250,
        "stage_separation": P1 > 2 * P0 * P0,
        "stage_repetition": R0 >= threshold,
    }
    descriptions = {
        "stage_prime_floor": f"P0 = {P0:.4g} < 250",
        "stage_separation": f"P1 = {P1:.4g} <= 2·P0² = {2 * P0 * P0:.4g}",
        "stage_repetition": f"R0 = {R0} < {threshold:.4g}",
    }
    if mu is not None:
        ratio = density_ratio(max(N, 16), 3)
        budget = 15 * math.log(P1) / P0 + 5 * math.log(N) / (2 * P1)
        flags["density"] = ratio <= mu < 1
        flags["error_budget"] = budget <= mu
        flags["reciprocal_mu"] = is_reciprocal_integer(mu)
        descriptions["density"] = f"L₂³/L₁ = {ratio:.4g} <= μ = {mu} < 1 不成立"
        descriptions["error_budget"] = f"15 log P1/P0 + 5 log N/(2P1) = {budget:.4g} > μ = {mu}"
        descriptions["reciprocal_mu"] = f"1/μ = {1 / mu:.6g} 不是整数"
    finish_flags(flags, descriptions, strict)

    manager = get_manager(manager, threads)
    primes = primes_in_dyadic(P1)
    triples = []
    sizes = {}
    stage_eps = 0.0
    for q in primes:
        stage = build_stage_set(q, P0, R0, variant, manager=manager)
        sizes[q] = stage.multiset.size
        stage_eps = max(stage_eps, stage.certificate.measured)
        triples.extend((v, q, c) for v, c in zip(stage.multiset.values, stage.multiset.counts))
    if len(set(sizes.values())) > 1:
        raise StageSizeMismatch(f"|S_q| 不一致: {sizes}")

    points = TuranPointSet.of(triples)
    V1 = len(primes)
    S = next(iter(sizes.values()))
    if points.n != V1 * S:
        raise StageSizeMismatch(f"n = {points.n} != V1·S = {V1 * S}")

    result = power_sum_max(points, N, manager=manager)
    n = points.n
    certificate = TuranCertificate(
        N=N, P0=float(P0), P1=float(P1), R0=R0, V1=V1, S=S, n=n,
        stage_eps=stage_eps,
        divisor_term=math.log(N) / (V1 * math.log(P1 / 2)),
        measured=result["M"] / n, argmax_k=result["argmax_k"],
        variant=variant, mu=mu,
        stage1_eps=15 * math.log(P1) / P0,
        size_bound=turan_size_bound(R0, P0, P1),
        er_bound=er_reference_bound(n, N),
        flags=flags,
    )
    logger.info(f"📊 Turán 点集 n={n}, N={N}: M_N/n = {certificate.measured:.6f}, "
                f"上界 {certificate.bound:.6f}, 随机参考 {certificate.er_bound / n:.6f}")
    return TuranConstruction(points, certificate)


def turan_frame(z: TuranPointSet, N: int, manager: Optional[ScanManager] = None,
                threads: Optional[int] = None) -> TuranFrame:
    """
    n×N 矩阵，第 k 列为 n^{-1/2}(z_1^{k-1}, ..., z_n^{k-1})
    直接计算的相干性应等于 M_{N-1}(z)/n
    """
    N = int(N)
    if N < 2:
        raise ParameterError(f"N 必须 >= 2: {N}")
    n = z.n
    if n * N > FRAME_LIMIT:
        raise TooLarge("turan_frame", n * N, FRAME_LIMIT)

    s = np.repeat([p[0] for p in z.points], [p[2] for p in z.points]).astype(np.int64)
    q = np.repeat([p[1] for p in z.points], [p[2] for p in z.points]).astype(np.int64)
    k = np.arange(N, dtype=np.int64)
    phases = (np.outer(s, k) % q[:, None]).astype(np.float64) / q[:, None]
    matrix = np.exp(2j * math.pi * phases) / math.sqrt(n)

    manager = get_manager(manager, threads)
    mu = matrix_coherence(matrix, manager)
    bridge = power_sum_max(z, N - 1, manager=manager)["M"] / n
    frame = TuranFrame(matrix, mu, bridge)
    if not frame.agrees:
        logger.warning(f"⚠️ 相干性 {mu:.12f} 与 M_(N-1)/n = {bridge:.12f} 不一致")
    return frame
