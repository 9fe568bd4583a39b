#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Fourier 系数很小的稀疏剩余集
分段构造 T = {r + s·(p^{-1})_q}，测量 |f_T| 并生成证书
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.arith import PrimeLike, as_prime_modulus, mod_inverse, mulmod_array, primes_in_dyadic
from core.config import scan_setting
from core.errors import (ModulusTooSmall, ParameterConditionViolated, ParameterError,
                         PhaseCertError, TooLarge, UnequalStageSizes)
from core.scan_manager import ScanManager, get_manager, split_range

logger = logging.getLogger(__name__)

FULL_SCAN_LIMIT = 10 ** 10
STAGE_PRIME_FLOOR = 250
TOLERANCE = 1e-9
VARIANTS = ("nonzero", "all_integers")


@dataclass(frozen=True)
class ResidueMultiset:
    """模 N 的剩余多重集，values 升序且不重复，counts 为对应重数"""

    modulus: int
    values: Tuple[int, ...]
    counts: Tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ParameterError(f"模数必须 >= 1: {self.modulus}")
        if len(self.values) != len(self.counts):
            raise ParameterError("values 与 counts 长度不一致")
        if any(c < 1 for c in self.counts):
            raise ParameterError("重数必须 >= 1")
        if any(not 0 <= v < self.modulus for v in self.values):
            raise ParameterError(f"元素必须在 [0, {self.modulus}) 内")

    @classmethod
    def of(cls, modulus: int, values: Iterable[int],
           counts: Optional[Iterable[int]] = None) -> "ResidueMultiset":
        """约化后合并重复元素"""
        modulus = int(modulus)
        values = np.remainder(np.asarray(list(values), dtype=np.int64), modulus)
        weights = (np.ones(values.size, dtype=np.int64) if counts is None
                   else np.asarray(list(counts), dtype=np.int64))
        if values.size == 0:
            return cls(modulus, (), ())
        unique, inverse = np.unique(values, return_inverse=True)
        merged = np.bincount(inverse, weights=weights).astype(np.int64)
        return cls(modulus, tuple(int(v) for v in unique), tuple(int(c) for c in merged))

    @property
    def size(self) -> int:
        """计重数的元素个数"""
        return int(sum(self.counts))

    @property
    def is_set(self) -> bool:
        return all(c == 1 for c in self.counts)

    def values_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    def counts_array(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=np.int64)

    def union(self, other: "ResidueMultiset") -> "ResidueMultiset":
        """多重集并（重数相加）"""
        if other.modulus != self.modulus:
            raise ParameterError(f"模数不同: {self.modulus} != {other.modulus}")
        return ResidueMultiset.of(self.modulus, self.values + other.values, self.counts + other.counts)

    def centered(self) -> np.ndarray:
        """提升到 (-N/2, N/2] 的整数代表元（按重数展开）"""
        values = np.repeat(self.values_array(), self.counts_array())
        return np.where(values > self.modulus // 2, values - self.modulus, values)

    def to_dict(self) -> Dict[str, Any]:
        return {"modulus": self.modulus, "elements": [[v, c] for v, c in zip(self.values, self.counts)]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ResidueMultiset":
        pairs = data["elements"]
        return cls.of(data["modulus"], (int(v) for v, _ in pairs), (int(c) for _, c in pairs))


@dataclass
class FourierProfile:
    """|f_S| = max_{1<=k<=N-1} |f_S(k)| / |S|"""

    modulus: int
    set_size: int
    max_normalized: float
    argmax_k: int
    scan: str = "full"
    samples: Optional[int] = None
    seed: Optional[int] = None
    magnitudes: Optional[np.ndarray] = field(default=None, repr=False)
    frequencies: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def lower_bound(self) -> bool:
        """抽样扫描只给出下界"""
        return self.scan == "sampled"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "modulus": self.modulus,
            "set_size": self.set_size,
            "max_normalized": self.max_normalized,
            "argmax_k": self.argmax_k,
            "scan": self.scan,
            "samples": self.samples,
            "seed": self.seed,
            "lower_bound": self.lower_bound,
        }


@dataclass
class ThinSetCertificate:
    """
    稀疏集证书
    mode 为 stage（单段）、one_iteration 或 two_stage；flags 中任何一项为 False 时 certified 为 False
    """

    mode: str
    N: int
    variant: str
    size: int
    measured: float
    argmax_k: int
    scan: str
    distinct: bool
    P0: Optional[float] = None
    P1: Optional[float] = None
    R0: Optional[int] = None
    R1: Optional[int] = None
    V0: Optional[int] = None
    V1: Optional[int] = None
    mu: Optional[float] = None
    stage1_eps: Optional[float] = None
    stage_eps_measured: Optional[float] = None
    composed_bound: Optional[float] = None
    w_bound: Optional[float] = None
    size_bound: Optional[float] = None
    flags: Dict[str, bool] = field(default_factory=dict)
    collision: Optional[Dict[str, Any]] = None

    @property
    def bound(self) -> Optional[float]:
        """证书给出的上界：两段构造用组合界，单段用 15 log q / P"""
        if self.composed_bound is not None:
            return self.composed_bound
        return self.stage1_eps

    @property
    def within_bound(self) -> Optional[bool]:
        bound = self.bound
        if bound is None:
            return None
        return self.measured <= bound + TOLERANCE

    @property
    def certified(self) -> bool:
        """所有前提成立、全量扫描且测量值不超过上界"""
        return (all(self.flags.values()) and self.scan == "full"
                and bool(self.within_bound))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "N": self.N,
            "variant": self.variant,
            "size": self.size,
            "P0": self.P0, "P1": self.P1, "R0": self.R0, "R1": self.R1,
            "V0": self.V0, "V1": self.V1,
            "mu": self.mu,
            "stage1_eps": self.stage1_eps,
            "stage_eps_measured": self.stage_eps_measured,
            "composed_bound": self.composed_bound,
            "w_bound": self.w_bound,
            "size_bound": self.size_bound,
            "bound": self.bound,
            "measured": self.measured,
            "argmax_k": self.argmax_k,
            "scan": self.scan,
            "measured_is_lower_bound": self.scan == "sampled",
            "distinct": self.distinct,
            "collision": self.collision,
            "flags": dict(self.flags),
            "within_bound": self.within_bound,
            "certified": self.certified,
        }


@dataclass
class ThinSet:
    """构造结果：多重集 + 证书"""

    multiset: ResidueMultiset
    certificate: ThinSetCertificate

    def to_dict(self) -> Dict[str, Any]:
        data = self.multiset.to_dict()
        data["certificate"] = self.certificate.to_dict()
        return data


def fourier_max_profile(S: ResidueMultiset, scan: str = "full", count: int = 100_000,
                        seed: int = 0, keep_magnitudes: bool = False,
                        manager: Optional[ScanManager] = None,
                        threads: Optional[int] = None) -> FourierProfile:
    """
    计算 max_{1<=k<=N-1} |Σ_s e(ks/N)| / |S|
    相位 k·s mod N 用整数精确约化，按 k 分块并行，合并时取最大值（并列取最小的 k）
    :param scan: full 全量 / sampled 随机抽取 count 个频率（下界）
    :param keep_magnitudes: 保留每个 k 的 |f_S(k)|/|S|，用于导出 CSV
    """
    N = S.modulus
    if N < 2:
        raise ParameterError(f"模数必须 >= 2: {N}")
    size = S.size
    if size == 0:
        raise ParameterError("多重集为空")
    values = S.values_array()
    weights = S.counts_array().astype(np.float64)

    if scan == "full":
        cost = len(values) * (N - 1)
        if cost > FULL_SCAN_LIMIT:
            raise TooLarge("fourier_max_profile full", cost, FULL_SCAN_LIMIT)
        frequencies = None
        step = max(1, scan_setting("fourier_block_elements") // len(values))
        blocks = split_range(1, N, step)
    elif scan == "sampled":
        rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
        frequencies = np.sort(rng.integers(1, N, size=int(count), dtype=np.int64))
        step = max(1, scan_setting("fourier_block_elements") // len(values))
        blocks = split_range(0, len(frequencies), step)
    else:
        raise ParameterError(f"未知扫描模式: {scan}")

    scale = 2.0 * math.pi / N

    def evaluate(block: range):
        if frequencies is None:
            ks = np.arange(block.start, block.stop, dtype=np.int64)
        else:
            ks = frequencies[block.start:block.stop]
        phases = mulmod_array(ks[:, None], values[None, :], N).astype(np.float64) * scale
        magnitude = np.hypot(np.cos(phases) @ weights, np.sin(phases) @ weights) / size
        best = int(np.argmax(magnitude))
        return float(magnitude[best]), int(ks[best]), (magnitude if keep_magnitudes else None)

    manager = get_manager(manager, threads)
    results = manager.run_blocks(evaluate, blocks)
    best_value, best_k = -1.0, 0
    for value, k, _ in results:
        # 并列时保留较早（较小）的 k
        if value > best_value:
            best_value, best_k = value, k

    magnitudes = np.concatenate([r[2] for r in results]) if keep_magnitudes else None
    if keep_magnitudes:
        freq_out = (np.arange(1, N, dtype=np.int64) if frequencies is None else frequencies)
    else:
        freq_out = None
    return FourierProfile(modulus=N, set_size=size, max_normalized=best_value, argmax_k=best_k,
                          scan=scan, samples=int(count) if scan == "sampled" else None,
                          seed=int(seed) if scan == "sampled" else None,
                          magnitudes=magnitudes, frequencies=freq_out)


def stage_integers(p: int, variant: str = "nonzero") -> np.ndarray:
    """S_p：(-p/2, p/2) 内的整数，nonzero 变体去掉 0"""
    if variant not in VARIANTS:
        raise ParameterError(f"未知变体: {variant}")
    half = (p - 1) // 2
    values = np.arange(-half, half + 1, dtype=np.int64)
    if variant == "nonzero":
        values = values[values != 0]
    return values


def stage_repetition_threshold(P: float, q: float) -> float:
    """R >= 1 + log(1 + 0.26P / log(2q)) / 2"""
    return 1 + math.log(1 + 0.26 * P / math.log(2 * q)) / 2


def w_bound(q: float, P: float, R: int, V: int) -> float:
    """
    全体整数变体的界 W/(2V) + W/(RV)·(1 + log(1+V/W)/2)，W = 4 log(q/2)/log(P/2)
    """
    if P <= 2 or V == 0:
        return math.inf
    W = 4 * math.log(q / 2) / math.log(P / 2)
    return W / (2 * V) + W / (R * V) * (1 + math.log(1 + V / W) / 2)


def _stage_values(q: int, primes: Sequence[int], R: int,
                  family: Mapping[int, np.ndarray]) -> Tuple[np.ndarray, List[Tuple[int, int, int]]]:
    """r + s·(p^{-1})_q 的全部取值，以及每个取值对应的 (r, p, s)"""
    chunks, labels = [], []
    for p in primes:
        inverse = mod_inverse(p, q).value
        s = np.asarray(family[p], dtype=np.int64)
        shifted = mulmod_array(s, inverse, q)
        for r in range(1, R + 1):
            chunks.append((shifted + r) % q)
            labels.extend((r, p, int(x)) for x in s)
    values = np.concatenate(chunks) if chunks else np.array([], dtype=np.int64)
    return values, labels


def find_collision(R: int, P: float, family: Mapping[int, Sequence[int]],
                   q: PrimeLike) -> Optional[Dict[str, Any]]:
    """
    找出 r + s·(p^{-1})_q 中模 q 相同的两项
    :return: 碰撞描述，没有碰撞返回 None
    """
    q = as_prime_modulus(q).p
    primes = sorted(int(p) for p in family)
    for p in primes:
        if any(not -p / 2 < int(s) < p / 2 for s in family[p]):
            raise ParameterError(f"S_{p} 必须在 (-{p}/2, {p}/2) 内")
        if p <= P / 2 or p > P:
            raise ParameterError(f"{p} 不在 (P/2, P] 内")
    values, labels = _stage_values(q, primes, int(R), family)
    if values.size == 0:
        return None
    order = np.argsort(values, kind="stable")
    ordered = values[order]
    repeated = np.flatnonzero(ordered[1:] == ordered[:-1])
    if repeated.size == 0:
        return None
    i, j = int(order[repeated[0]]), int(order[repeated[0] + 1])
    return {"value": int(values[i]), "first": list(labels[i]), "second": list(labels[j])}


def check_distinctness(R: int, P: float, family: Mapping[int, Sequence[int]], q: PrimeLike) -> bool:
    """
    所有 r + s·(p^{-1})_q 模 q 两两不同时返回 True
    q >= R·P² 时必然不同，出现碰撞视为内部错误
    """
    collision = find_collision(R, P, family, q)
    q = as_prime_modulus(q).p
    if collision is not None and q >= R * P * P:
        raise PhaseCertError(f"q = {q} >= R·P² 却出现碰撞: {collision}")
    return collision is None


def build_stage_set(q: PrimeLike, P: float, R: int, variant: str = "nonzero",
                    scan: str = "full", count: int = 100_000, seed: int = 0,
                    manager: Optional[ScanManager] = None,
                    threads: Optional[int] = None) -> ThinSet:
    """
    单段构造 T = {r + s·(p^{-1})_q : 1<=r<=R, P/2<p<=P, s∈S_p}（模 q 的多重集）
    :param variant: nonzero 用非零整数（15 log q / P 界），all_integers 用全部整数（W 界）
    """
    q = as_prime_modulus(q).p
    R = int(R)
    if q <= P:
        raise ModulusTooSmall(f"q = {q} <= P = {P}")
    if R < 1:
        raise ParameterError(f"R 必须 >= 1: {R}")
    primes = primes_in_dyadic(P)
    family = {p: stage_integers(p, variant) for p in primes}
    values, _ = _stage_values(q, primes, R, family)
    multiset = ResidueMultiset.of(q, values)
    V = len(primes)

    collision = find_collision(R, P, family, q)
    if variant == "nonzero":
        stage1_eps, wb = 15 * math.log(q) / P, None
        flags = {
            "stage_prime_floor": P >= STAGE_PRIME_FLOOR,
            "stage_repetition": R >= stage_repetition_threshold(P, q),
        }
    else:
        stage1_eps, wb = None, w_bound(q, P, R, V)
        flags = {"stage_floor": P >= 4}

    profile = fourier_max_profile(multiset, scan, count, seed, manager=manager, threads=threads)
    certificate = ThinSetCertificate(
        mode="stage", N=q, variant=variant, size=multiset.size,
        measured=profile.max_normalized, argmax_k=profile.argmax_k, scan=scan,
        distinct=collision is None, collision=collision,
        P0=float(P), R0=R, V0=V, stage1_eps=stage1_eps, w_bound=wb, flags=flags,
    )
    if variant == "all_integers":
        # 全体整数变体用 W 界作为上界
        certificate.composed_bound = wb
    logger.info(f"📊 单段集合 q={q}, P={P}, R={R}: |T|={multiset.size}, |f_T|={profile.max_normalized:.6f}")
    return ThinSet(multiset, certificate)


def composition_bound(eps: float, R1: int, N: int, V1: int, P1: float) -> float:
    """ε + (2/√3)/R1 + log(N/3) / (V1 log(P1/2))"""
    return eps + (2 / math.sqrt(3)) / R1 + math.log(N / 3) / (V1 * math.log(P1 / 2))


def size_bound(R0: int, R1: int, P0: float, P1: float) -> float:
    """|T| <= 0.76²·R0·R1·P1·P0² / (log P0 · log P1)"""
    return 0.76 ** 2 * R0 * R1 * P1 * P0 * P0 / (math.log(P0) * math.log(P1))


def compose_thin_set(N: PrimeLike, P1: float, R1: int, stage_sets: Mapping[int, ResidueMultiset],
                     stage_eps: Optional[float] = None, scan: str = "full",
                     count: int = 100_000, seed: int = 0,
                     manager: Optional[ScanManager] = None,
                     threads: Optional[int] = None) -> ThinSet:
    """
    组合 T = {r + s·(q^{-1})_N : 1<=r<=R1, P1/2<q<=P1, s∈S_q}
    S_q 的元素取 (-q/2, q/2) 中的代表元；ε 默认取各 S_q 的实测 |f_{S_q}| 最大值
    """
    N = as_prime_modulus(N).p
    R1 = int(R1)
    if N <= P1:
        raise ModulusTooSmall(f"N = {N} <= P1 = {P1}")
    if P1 < 4:
        raise ParameterError(f"P1 必须 >= 4: {P1}")
    primes = primes_in_dyadic(P1)
    if sorted(int(q) for q in stage_sets) != primes:
        raise ParameterError(f"阶段集合必须恰好对应 ({P1}/2, {P1}] 内的全部素数")
    sizes = {q: stage_sets[q].size for q in primes}
    if len(set(sizes.values())) != 1:
        raise UnequalStageSizes(f"|S_q| 不一致: {sizes}")
    S = sizes[primes[0]]
    if S < 2:
        raise ParameterError(f"|S_q| 必须 >= 2: {S}")
    for q in primes:
        if stage_sets[q].modulus != q:
            raise ParameterError(f"S_{q} 的模数应为 {q}")

    manager = get_manager(manager, threads)
    if stage_eps is None:
        stage_eps = max(fourier_max_profile(stage_sets[q], manager=manager).max_normalized
                        for q in primes)

    chunks = []
    for q in primes:
        lifted = stage_sets[q].centered()
        shifted = mulmod_array(lifted, mod_inverse(q, N).value, N)
        chunks.extend((shifted + r) % N for r in range(1, R1 + 1))
    multiset = ResidueMultiset.of(N, np.concatenate(chunks))

    profile = fourier_max_profile(multiset, scan, count, seed, manager=manager)
    V1 = len(primes)
    certificate = ThinSetCertificate(
        mode="composition", N=N, variant="given", size=multiset.size,
        measured=profile.max_normalized, argmax_k=profile.argmax_k, scan=scan,
        distinct=multiset.is_set, P1=float(P1), R1=R1, V1=V1,
        stage_eps_measured=stage_eps,
        composed_bound=composition_bound(stage_eps, R1, N, V1, P1),
        flags={"distinctness_range": N >= R1 * P1 * P1},
    )
    logger.info(f"📊 组合完成 N={N}: |T|={multiset.size}, 实测 {profile.max_normalized:.6f}, "
                f"上界 {certificate.composed_bound:.6f}")
    return ThinSet(multiset, certificate)


def one_iteration_params(N: int, mu: float) -> Tuple[float, int]:
    """P = (15/μ) log N，R = ⌊2 + log(1 + 5/μ)/2⌋"""
    return 15 / mu * math.log(N), int(math.floor(2 + math.log(1 + 5 / mu) / 2))


def two_stage_params(N: int, mu: float) -> Dict[str, Any]:
    """R0 = ⌊2 + log(1+13/μ)/2⌋，R1 = 4/μ，P1 = (8/μ) log N，P0 = (45/μ) log P1"""
    P1 = 8 / mu * math.log(N)
    return {
        "R0": int(math.floor(2 + math.log(1 + 13 / mu) / 2)),
        "R1": max(1, int(round(4 / mu))),
        "P1": P1,
        "P0": 45 / mu * math.log(P1),
    }


def density_ratio(N: int, power: int) -> float:
    """(log log N)^power / log N"""
    L1 = math.log(N)
    return math.log(L1) ** power / L1


def is_reciprocal_integer(mu: float) -> bool:
    inverse = 1 / mu
    return abs(inverse - round(inverse)) < 1e-9


def finish_flags(flags: Dict[str, bool], descriptions: Dict[str, str], strict: bool):
    violated = [descriptions[name] for name, ok in flags.items() if not ok]
    if violated and strict:
        raise ParameterConditionViolated(violated)
    for line in violated:
        logger.warning(f"⚠️ 条件不成立（证书标记为未认证）: {line}")


def construct_thin_set(N: PrimeLike, mu: Optional[float] = None, mode: str = "two_stage",
                       strict: bool = False, P: Optional[float] = None, R: Optional[int] = None,
                       P0: Optional[float] = None, P1: Optional[float] = None,
                       R0: Optional[int] = None, R1: Optional[int] = None,
                       variant: str = "nonzero", scan: str = "full", count: int = 100_000,
                       seed: int = 0, manager: Optional[ScanManager] = None,
                       threads: Optional[int] = None) -> ThinSet:
    """
    构造模 N 的稀疏集
    :param mode: one_iteration（单段，q = N）或 two_stage（两段组合）
    :param strict: 条件不成立时抛出 ParameterConditionViolated；否则在证书中标记
    显式给出的 P/R/P0/P1/R0/R1 覆盖由 μ 推出的值
    """
    N = as_prime_modulus(N).p
    if mu is not None and not 0 < mu:
        raise ParameterError(f"μ 必须为正: {mu}")
    manager = get_manager(manager, threads)

    if mode == "one_iteration":
        if mu is not None:
            derived_P, derived_R = one_iteration_params(N, mu)
            P = derived_P if P is None else P
            R = derived_R if R is None else R
        if P is None or R is None:
            raise ParameterError("one_iteration 需要 μ 或 (P, R)")
        flags = {
            "stage_prime_floor": P >= STAGE_PRIME_FLOOR,
            "stage_repetition": R >= stage_repetition_threshold(P, N),
        }
        descriptions = {
            "stage_prime_floor": f"P = {P:.4g} < 250",
            "stage_repetition": f"R = {R} < {stage_repetition_threshold(P, N):.4g}",
        }
        if mu is not None:
            lower = math.log(N) ** 2 / math.sqrt(N)
            flags["mu_range"] = lower <= mu < 1
            descriptions["mu_range"] = f"log²N/√N = {lower:.4g} <= μ = {mu} < 1 不成立"
        finish_flags(flags, descriptions, strict)
        result = build_stage_set(N, P, R, variant, scan, count, seed, manager)
        result.certificate.mode = "one_iteration"
        result.certificate.mu = mu
        result.certificate.flags.update(flags)
        if mu is not None and result.certificate.stage1_eps is not None:
            result.certificate.flags["target_mu"] = result.certificate.stage1_eps <= mu + TOLERANCE
        return result

    if mode != "two_stage":
        raise ParameterError(f"未知模式: {mode}")

    if mu is not None:
        derived = two_stage_params(N, mu)
        P0 = derived["P0"] if P0 is None else P0
        P1 = derived["P1"] if P1 is None else P1
        R0 = derived["R0"] if R0 is None else R0
        R1 = derived["R1"] if R1 is None else R1
    if None in (P0, P1, R0, R1):
        raise ParameterError("two_stage 需要 μ 或 (P0, P1, R0, R1)")
    R0, R1 = int(R0), int(R1)

    threshold = 1 + math.log(1 + 0.26 * P0 / math.log(P1)) / 2
    flags = {
        "stage_prime_floor": P0 >= STAGE_PRIME_FLOOR,
        "stage_separation": P1 >= 2 * R0 * P0 * P0,
        "distinctness_range": N >= R1 * P1 * P1,
        "stage_repetition": R0 >= threshold,
    }
    descriptions = {
        "stage_prime_floor": f"P0 = {P0:.4g} < 250",
        "stage_separation": f"P1 = {P1:.4g} < 2·R0·P0² = {2 * R0 * P0 * P0:.4g}",
        "distinctness_range": f"N = {N} < R1·P1² = {R1 * P1 * P1:.4g}",
        "stage_repetition": f"R0 = {R0} < {threshold:.4g}",
    }
    if mu is not None:
        budget = (2 / math.sqrt(3)) / R1 + 15 * math.log(P1) / P0 + 5 * math.log(N) / (2 * P1)
        ratio = density_ratio(N, 4)
        flags["error_budget"] = budget <= mu
        flags["density"] = ratio <= mu < 1
        flags["reciprocal_mu"] = is_reciprocal_integer(mu)
        descriptions["error_budget"] = f"(2/√3)/R1 + 15 log P1/P0 + 5 log N/(2P1) = {budget:.4g} > μ = {mu}"
        descriptions["density"] = f"L₂⁴/L₁ = {ratio:.4g} <= μ = {mu} < 1 不成立"
        descriptions["reciprocal_mu"] = f"1/μ = {1 / mu:.6g} 不是整数"
    finish_flags(flags, descriptions, strict)

    stage_primes = primes_in_dyadic(P1)
    if stage_primes and stage_primes[0] <= P0:
        raise ModulusTooSmall(f"阶段模数 {stage_primes[0]} <= P0 = {P0}")
    stages = {}
    stage_eps = 0.0
    for q in stage_primes:
        stage = build_stage_set(q, P0, R0, variant, manager=manager)
        stages[q] = stage.multiset
        stage_eps = max(stage_eps, stage.certificate.measured)
    V0 = len(primes_in_dyadic(P0))

    result = compose_thin_set(N, P1, R1, stages, stage_eps, scan, count, seed, manager)
    cert = result.certificate
    cert.mode = "two_stage"
    cert.variant = variant
    cert.mu = mu
    cert.P0, cert.R0, cert.V0 = float(P0), R0, V0
    cert.stage1_eps = 15 * math.log(P1) / P0
    cert.size_bound = size_bound(R0, R1, P0, P1)
    cert.flags.update(flags)
    return result
