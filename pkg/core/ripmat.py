#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
二次相位框架
由集合 𝒜、ℬ 构造 p×N 复矩阵 u_{a,b}(x) = p^{-1/2} e_p(ax^2+bx)，
并测量相干性、flat-RIP 常数与精确 RIP 常数
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.additive import ResidueSet, additive_energy
from core.arith import (PrimeLike, PrimeModulus, as_prime_modulus, legendre_symbol,
                        mod_inverse, mulmod_array, root_of_unity, unit_phases)
from core.config import scan_setting
from core.errors import (CubeOverflow, DuplicateElements, ModulusMismatch,
                         ParameterConditionViolated, ParameterError, ParamsTooLarge,
                         TooLarge, TooManyColumns, ZeroTheta)
from core.scan_manager import ScanManager, get_manager, split_range

logger = logging.getLogger(__name__)

FRAME_ENTRY_LIMIT = 50_000_000
DISSOCIATIVITY_LIMIT = 10 ** 8
FLAT_EXHAUSTIVE_LIMIT = 10 ** 7
EXACT_SUPPORT_LIMIT = 10 ** 5
EXACT_MAX_ORDER = 24
EXP_SUM_LIMIT = 10 ** 7
FLAT_CONVERSION_MIN_K = 1 << 10


@dataclass(frozen=True)
class ConstructionParams:
    """
    构造参数
    derived 模式按公式从 p、m 推出；override 模式直接给定 L、U、M、r
    """

    m: int
    alpha: float
    beta: float
    L: int
    U: int
    M_digits: int
    r_digits: int
    mode: str
    dissociativity_certified: bool = True
    violations: Tuple[str, ...] = ()

    @classmethod
    def derived(cls, p: PrimeLike, m: int) -> "ConstructionParams":
        """α = 1/(8m²)，β = α/2，L = ⌊p^α⌋，U = L^{4m-1}，M = 2^{16m²-1}，r = ⌊β log p / log 2⌋"""
        p = as_prime_modulus(p).p
        _check_m(m)
        exponent = 8 * m * m
        alpha = 1.0 / exponent
        beta = alpha / 2
        # 整数开方，避免 p^α 的浮点误差
        L = max(1, int(round(p ** alpha)))
        while L ** exponent > p:
            L -= 1
        while (L + 1) ** exponent <= p:
            L += 1
        r = int(math.floor(beta * math.log(p) / math.log(2)))
        return cls(m=m, alpha=alpha, beta=beta, L=L, U=L ** (4 * m - 1),
                   M_digits=2 ** (16 * m * m - 1), r_digits=r, mode="derived")

    @classmethod
    def override(cls, p: PrimeLike, m: int, L: int, U: int, M: int, r: int,
                 strict: bool = False) -> "ConstructionParams":
        """
        直接给定参数
        :param strict: 为 True 时，2m·L^{4m-2} <= U 或 U^{2m} < p 不成立会抛出异常
        """
        p = as_prime_modulus(p).p
        _check_m(m)
        if L < 1 or U < 0 or M < 2 or r < 0:
            raise ParameterError(f"参数越界: L={L}, U={U}, M={M}, r={r}")
        if (2 * M) ** r > p:
            raise CubeOverflow(f"(2M)^r = {(2 * M) ** r} > p = {p}")

        violations = []
        if 2 * m * L ** (4 * m - 2) > U:
            violations.append(f"2m·L^(4m-2) = {2 * m * L ** (4 * m - 2)} > U = {U}")
        if U ** (2 * m) >= p:
            violations.append(f"U^(2m) = {U ** (2 * m)} >= p = {p}")
        if violations and strict:
            raise ParameterConditionViolated(violations)
        if violations:
            logger.warning(f"⚠️ override 参数不满足不相交性条件: {'; '.join(violations)}")

        log_p = math.log(p)
        return cls(m=m, alpha=math.log(L) / log_p, beta=r * math.log(2 * M) / log_p,
                   L=L, U=U, M_digits=M, r_digits=r, mode="override",
                   dissociativity_certified=not violations, violations=tuple(violations))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m, "alpha": self.alpha, "beta": self.beta,
            "L": self.L, "U": self.U, "M_digits": self.M_digits, "r_digits": self.r_digits,
            "mode": self.mode,
            "dissociativity_certified": self.dissociativity_certified,
            "violations": list(self.violations),
        }


def _check_m(m: int):
    if m < 2 or m % 2:
        raise ParameterError(f"m 必须是 >= 2 的偶数: {m}")


@dataclass(frozen=True)
class QuadPhaseFrame:
    """p×N 二次相位框架，存储补零到 n_rows 行"""

    p: PrimeModulus
    set_A: Tuple[int, ...]
    set_B: Tuple[int, ...]
    columns: Tuple[Tuple[int, int], ...]
    n_rows: int
    matrix: np.ndarray
    params: Optional[ConstructionParams] = None

    @property
    def N(self) -> int:
        return len(self.columns)

    @property
    def active(self) -> np.ndarray:
        """前 p 行，补零行不参与任何内积"""
        return self.matrix[:self.p.p]

    def to_metadata(self) -> Dict[str, Any]:
        return {
            "p": self.p.p,
            "residue_class_mod4": self.p.residue_class_mod4,
            "set_A": list(self.set_A),
            "set_B": list(self.set_B),
            "N": self.N,
            "n_rows": self.n_rows,
            "params": self.params.to_dict() if self.params else None,
        }


@dataclass
class DissociativityResult:
    """不相交性检查结果"""

    passed: bool
    tuples_checked: int
    counterexample: Optional[Dict[str, Any]] = None
    multisets_checked: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {"pass": self.passed, "tuples_checked": self.tuples_checked,
                "multisets_checked": self.multisets_checked,
                "counterexample": self.counterexample}


@dataclass
class RipReport:
    """RIP 测量报告"""

    k: int
    delta_flat: float
    delta_exact: Optional[float]
    delta_from_coherence: float
    mode: str
    mu: float
    trials: Optional[int] = None
    seed: Optional[int] = None
    notes: List[str] = field(default_factory=list)
    flat_order: Optional[int] = None

    @property
    def consistent(self) -> bool:
        """δ_exact <= (k-1)μ"""
        return self.delta_exact is None or self.delta_exact <= self.delta_from_coherence + 1e-9

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "mu": self.mu,
            "delta_flat": self.delta_flat,
            "delta_flat_is_lower_bound": self.mode == "sampled",
            "flat_order": self.k if self.flat_order is None else self.flat_order,
            "delta_exact": self.delta_exact,
            "delta_from_coherence": self.delta_from_coherence,
            "mode": self.mode,
            "trials": self.trials,
            "seed": self.seed,
            "pass": self.consistent,
            "notes": list(self.notes),
        }


def build_set_A(p: PrimeLike, params: ConstructionParams) -> List[int]:
    """
    𝒜 = {x² + Ux mod p : 1 <= x <= L}
    :return: 按 x 顺序排列的 L 个剩余
    """
    p = as_prime_modulus(p).p
    L = params.L
    if params.mode == "derived" and L < 2 * params.m:
        raise ParamsTooLarge(f"L = ⌊p^α⌋ = {L} < 2m = {2 * params.m}，需要 p > (2m)^(8m²)")
    if L < 1:
        raise ParameterError(f"L 必须 >= 1: {L}")
    values = [(x * x + params.U * x) % p for x in range(1, L + 1)]
    if len(set(values)) != L:
        raise DuplicateElements(f"𝒜 在模 {p} 下出现重复元素")
    return values


def build_set_B(p: PrimeLike, params: ConstructionParams) -> List[int]:
    """ℬ = {Σ x_j (2M)^{j-1} : 0 <= x_j < M}，升序"""
    p = as_prime_modulus(p).p
    M, r = params.M_digits, params.r_digits
    base = 2 * M
    if base ** r > p:
        raise CubeOverflow(f"(2M)^r = {base ** r} > p = {p}")
    values = [0]
    for j in range(r):
        weight = base ** j
        values = [v + x * weight for x in range(M) for v in values]
    return sorted(values)


def verify_dissociativity(A: Sequence[int], p: PrimeLike, m: int) -> DissociativityResult:
    """
    对每个 a ∈ A，检查 m 元倒数和 Σ 1/(a-a_j) 在 𝔽_p 中相等时两组是否互为排列
    只需比较多重集：同一个和对应两个不同的多重集即为反例
    tuples_checked 是已扫完的基点覆盖的有序 2m 元组数 (|A|-1)^{2m}，
    multisets_checked 是实际枚举的 m 元多重集数
    """
    p = as_prime_modulus(p).p
    A = [int(a) % p for a in A]
    if len(set(A)) != len(A):
        raise DuplicateElements("A 中有重复元素")
    size = len(A)
    if size <= 1:
        return DissociativityResult(True, 0)
    per_base = (size - 1) ** (2 * m)
    cost = size ** (2 * m + 1)
    if cost > DISSOCIATIVITY_LIMIT:
        raise TooLarge("verify_dissociativity", cost, DISSOCIATIVITY_LIMIT)

    checked = 0
    covered = 0
    for a in A:
        others = [x for x in A if x != a]
        inverses = [mod_inverse(a - x, p).value for x in others]
        seen: Dict[int, Tuple[int, ...]] = {}
        for combo in itertools.combinations_with_replacement(range(len(others)), m):
            checked += 1
            total = sum(inverses[i] for i in combo) % p
            if total in seen:
                first = seen[total]
                logger.info(f"🔍 不相交性反例: a={a}, {first} vs {combo}")
                return DissociativityResult(False, covered, multisets_checked=checked, counterexample={
                    "a": a,
                    "left": [others[i] for i in first],
                    "right": [others[i] for i in combo],
                    "sum": total,
                })
            seen[total] = combo
        covered += per_base
    return DissociativityResult(True, covered, multisets_checked=checked)


def build_frame(p: PrimeLike, A: Sequence[int], B: Sequence[int], N: Optional[int] = None,
                n_rows: Optional[int] = None,
                params: Optional[ConstructionParams] = None) -> QuadPhaseFrame:
    """
    组装框架：列按 (a 外层, b 内层) 升序取前 N 个
    :param N: 列数，默认 |A||B|
    :param n_rows: 行数，默认 p，多出的行补零
    """
    pm = as_prime_modulus(p)
    p = pm.p
    if p == 2:
        raise ParameterError("二次相位框架要求奇素数 p")
    A = sorted({int(a) % p for a in A})
    B = sorted({int(b) % p for b in B})
    grid = len(A) * len(B)
    N = grid if N is None else int(N)
    n_rows = p if n_rows is None else int(n_rows)
    if N > grid:
        raise TooManyColumns(f"N = {N} > |A||B| = {grid}")
    if N < 1:
        raise ParameterError(f"N 必须 >= 1: {N}")
    if n_rows < p:
        raise ParameterError(f"行数 {n_rows} < p = {p}")
    if n_rows * N > FRAME_ENTRY_LIMIT:
        raise TooLarge("build_frame", n_rows * N, FRAME_ENTRY_LIMIT)

    columns = tuple(itertools.islice(itertools.product(A, B), N))
    x = np.arange(p, dtype=np.int64)
    squares = mulmod_array(x, x, p)
    scale = 1.0 / math.sqrt(p)
    matrix = np.zeros((n_rows, N), dtype=np.complex128)
    cached_a, a_part = None, None
    for j, (a, b) in enumerate(columns):
        if a != cached_a:
            cached_a, a_part = a, mulmod_array(a, squares, p)
        phases = (a_part + mulmod_array(b, x, p)) % p
        matrix[:p, j] = scale * unit_phases(phases, p)
    matrix.setflags(write=False)
    logger.info(f"✅ 框架构造完成: p={p}, N={N}, n={n_rows}")
    return QuadPhaseFrame(pm, tuple(A), tuple(B), columns, n_rows, matrix, params)


def gram_closed_form(p: PrimeLike, a1: int, b1: int, a2: int, b2: int) -> complex:
    """
    ⟨u_{a1,b1}, u_{a2,b2}⟩ 的闭式
    a1 ≠ a2 时为 (σ_p/√p)·((a1-a2)/p)·e_p(-(b1-b2)²/(4(a1-a2)))，否则为 1{b1=b2}
    """
    pm = as_prime_modulus(p)
    p = pm.p
    d = (a1 - a2) % p
    e = (b1 - b2) % p
    if d == 0:
        return 1.0 + 0j if e == 0 else 0j
    inv = mod_inverse(4 * d, p).value
    phase = (-(e * e % p) * inv) % p
    return pm.sigma / math.sqrt(p) * legendre_symbol(d, p) * root_of_unity(phase, p)


def inner_product(frame: QuadPhaseFrame, i: int, j: int) -> complex:
    """第 i 列与第 j 列的内积 Σ_x u_i(x)·conj(u_j(x))"""
    active = frame.active
    return complex(np.vdot(active[:, j], active[:, i]))


def _rows(frame_or_matrix) -> np.ndarray:
    if isinstance(frame_or_matrix, QuadPhaseFrame):
        return frame_or_matrix.active
    return np.asarray(getattr(frame_or_matrix, "matrix", frame_or_matrix))


def _gram_block(matrix: np.ndarray, rows: range, cols: range) -> np.ndarray:
    """Gram 矩阵的一个块，G[i, j] = Σ conj(u_i)·u_j"""
    return matrix[:, rows.start:rows.stop].conj().T @ matrix[:, cols.start:cols.stop]


def gram_matrix(frame_or_matrix) -> np.ndarray:
    """
    完整的 Hermite Gram 矩阵
    与 coherence 使用相同的分块，下三角取上三角的共轭
    """
    matrix = _rows(frame_or_matrix)
    N = matrix.shape[1]
    blocks = split_range(0, N, scan_setting("gram_block_columns"))
    gram = np.zeros((N, N), dtype=np.complex128)
    for bi, rows in enumerate(blocks):
        for cols in blocks[bi:]:
            gram[rows.start:rows.stop, cols.start:cols.stop] = _gram_block(matrix, rows, cols)
    upper = np.triu(gram)
    return upper + np.triu(gram, 1).conj().T


def matrix_coherence(frame_or_matrix, manager: Optional[ScanManager] = None,
                     threads: Optional[int] = None) -> float:
    """
    μ = max_{r≠s} |⟨u_r, u_s⟩|，按列块并行扫描
    接受 QuadPhaseFrame、带 .matrix 的对象或直接传入矩阵
    """
    matrix = _rows(frame_or_matrix)
    N = matrix.shape[1]
    if N < 2:
        raise ParameterError("相干性至少需要 2 列")
    blocks = split_range(0, N, scan_setting("gram_block_columns"))

    def scan(bi: int) -> float:
        rows = blocks[bi]
        best = 0.0
        for bj in range(bi, len(blocks)):
            magnitude = np.abs(_gram_block(matrix, rows, blocks[bj]))
            if bj == bi:
                magnitude = np.triu(magnitude, 1)
            if magnitude.size:
                best = max(best, float(magnitude.max()))
        return best

    manager = get_manager(manager, threads)
    return manager.reduce_blocks(scan, list(range(len(blocks))), max, 0.0)


def coherence(frame: QuadPhaseFrame, manager: Optional[ScanManager] = None,
              threads: Optional[int] = None) -> float:
    """框架的相干性（只用前 p 行，补零不影响结果）"""
    return matrix_coherence(frame, manager, threads)


def flat_cost(N: int, k: int) -> int:
    """穷举 flat-RIP 的支撑对数 Σ_{i<=k} Σ_{j<=k} C(N,i)·C(N-i,j)"""
    return sum(math.comb(N, i) * math.comb(N - i, j)
               for i in range(1, k + 1) for j in range(1, k + 1))


def flat_order(N: int, k: int) -> int:
    """J1、J2 不相交，|J_i| 实际最多取到 N-1"""
    return min(int(k), int(N) - 1)


def _flat_value(gram: np.ndarray, J1: Sequence[int], J2: Sequence[int]) -> float:
    assert not set(J1) & set(J2), "J1 与 J2 必须不相交"
    h = gram[list(J1), :].sum(axis=0)
    return float(abs(h[list(J2)].sum()) / math.sqrt(len(J1) * len(J2)))


def flat_rip_constant(frame_or_matrix, k: int, mode: str = "exhaustive",
                      trials: int = 100_000, seed: int = 0,
                      manager: Optional[ScanManager] = None,
                      threads: Optional[int] = None) -> float:
    """
    flat-RIP 常数：max |⟨Σ_{J1} u, Σ_{J2} u⟩| / (|J1||J2|)^{1/2}，J1、J2 不相交且 |J_i| <= k
    :param mode: exhaustive 穷举 / sampled 随机抽样（结果是下界）
    :param trials: 抽样次数
    :param seed: 抽样种子
    """
    gram = gram_matrix(frame_or_matrix)
    N = gram.shape[0]
    k = int(k)
    if k < 1:
        raise ParameterError(f"k 必须 >= 1: {k}")
    if N < 2:
        raise ParameterError("flat-RIP 至少需要 2 列")
    if k > N - 1:
        logger.warning(f"⚠️ k = {k} 超过 N-1 = {N - 1}，flat-RIP 按 k = {N - 1} 计算")
        k = flat_order(N, k)
    manager = get_manager(manager, threads)

    if mode == "exhaustive":
        cost = flat_cost(N, k)
        if cost > FLAT_EXHAUSTIVE_LIMIT:
            raise TooLarge("flat_rip_constant exhaustive", cost, FLAT_EXHAUSTIVE_LIMIT)
        first_sets = [J1 for size in range(1, k + 1)
                      for J1 in itertools.combinations(range(N), size)]

        def scan(block: range) -> float:
            best = 0.0
            for J1 in first_sets[block.start:block.stop]:
                h = gram[list(J1), :].sum(axis=0)
                rest = [j for j in range(N) if j not in J1]
                for size in range(1, k + 1):
                    if size > len(rest):
                        break
                    combos = np.array(list(itertools.combinations(rest, size)), dtype=np.int64)
                    sums = np.abs(h[combos].sum(axis=1)) / math.sqrt(len(J1) * size)
                    best = max(best, float(sums.max()))
            return best

        return manager.reduce_blocks(scan, split_range(0, len(first_sets), 64), max, 0.0)

    if mode != "sampled":
        raise ParameterError(f"未知模式: {mode}")
    chunk = scan_setting("sample_chunk")
    blocks = split_range(0, int(trials), chunk)
    children = np.random.SeedSequence(int(seed)).spawn(len(blocks))

    def sample(index: int) -> float:
        rng = np.random.default_rng(children[index])
        best = 0.0
        for _ in blocks[index]:
            s1 = int(rng.integers(1, k + 1))
            s2 = int(rng.integers(1, min(k, N - s1) + 1))
            chosen = rng.permutation(N)[:s1 + s2]
            best = max(best, _flat_value(gram, chosen[:s1], chosen[s1:]))
        return best

    return manager.reduce_blocks(sample, list(range(len(blocks))), max, 0.0)


def exact_rip_constant(frame_or_matrix, k: int, manager: Optional[ScanManager] = None,
                       threads: Optional[int] = None) -> float:
    """
    精确 RIP 常数：所有 k 列支撑 S 上 max(λ_max(G_S)-1, 1-λ_min(G_S))
    Hermite 特征值用 numpy.linalg.eigvalsh 批量求
    """
    gram = gram_matrix(frame_or_matrix)
    N = gram.shape[0]
    k = int(k)
    if not 1 <= k <= N:
        raise ParameterError(f"k 必须在 [1, {N}] 内: {k}")
    if k > EXACT_MAX_ORDER:
        raise TooLarge("exact_rip_constant order", k, EXACT_MAX_ORDER)
    supports = math.comb(N, k)
    if supports > EXACT_SUPPORT_LIMIT:
        raise TooLarge("exact_rip_constant", supports, EXACT_SUPPORT_LIMIT)

    all_supports = np.array(list(itertools.combinations(range(N), k)), dtype=np.int64)

    def scan(block: range) -> float:
        idx = all_supports[block.start:block.stop]
        sub = gram[idx[:, :, None], idx[:, None, :]]
        eig = np.linalg.eigvalsh(sub)
        return float(np.maximum(eig[:, -1] - 1.0, 1.0 - eig[:, 0]).max())

    manager = get_manager(manager, threads)
    blocks = split_range(0, len(all_supports), scan_setting("support_batch"))
    return max(0.0, manager.reduce_blocks(scan, blocks, max, 0.0))


def rip_bounds(mu: float, delta_flat: float, k: int, s: int = 1) -> Dict[str, Any]:
    """
    由相干性和 flat-RIP 推出的 RIP 常数
    from_coherence = (k-1)μ，阶为 k
    from_flat = 44·s·δ·log k，阶为 2sk，要求 k >= 2^10
    """
    k, s = int(k), int(s)
    hypothesis = mu <= 1.0 / k
    from_flat = 44 * s * delta_flat * math.log(k)
    regime_ok = k >= FLAT_CONVERSION_MIN_K
    if not regime_ok:
        logger.warning(f"⚠️ k = {k} < 2^10，flat-RIP 换算超出适用范围")
    return {
        "k": k,
        "s": s,
        "from_coherence": (k - 1) * mu,
        "from_flat": from_flat,
        "from_flat_order": 2 * s * k,
        "from_flat_vacuous": from_flat >= 1.0,
        "from_flat_coherence_assisted": 44 * s * math.sqrt(delta_flat) * math.log(k) if hypothesis else None,
        "flat2_hypothesis_ok": hypothesis,
        "conversion_regime_ok": regime_ok,
    }


def rip_report(frame_or_matrix, k: int, mode: str = "exhaustive", trials: int = 100_000,
               seed: int = 0, manager: Optional[ScanManager] = None,
               threads: Optional[int] = None) -> RipReport:
    """汇总相干性、flat-RIP 与精确 RIP；精确值超出规模时留空"""
    manager = get_manager(manager, threads)
    mu = matrix_coherence(frame_or_matrix, manager)
    delta_flat = flat_rip_constant(frame_or_matrix, k, mode, trials, seed, manager)
    notes = []
    try:
        delta_exact = exact_rip_constant(frame_or_matrix, k, manager)
    except TooLarge as e:
        logger.warning(f"⚠️ 跳过精确 RIP: {e}")
        notes.append(str(e))
        delta_exact = None
    sampled = mode == "sampled"
    order = flat_order(_rows(frame_or_matrix).shape[1], k)
    if order != k:
        notes.append(f"flat-RIP 按 k = {order} 计算（J1、J2 不相交）")
    return RipReport(k=k, delta_flat=delta_flat, delta_exact=delta_exact,
                     delta_from_coherence=(k - 1) * mu, mode=mode, mu=mu,
                     trials=trials if sampled else None, seed=seed if sampled else None,
                     notes=notes, flat_order=order)


def exp_sum_energy_check(theta: int, B1: ResidueSet, B2: ResidueSet, p: PrimeLike) -> Dict[str, Any]:
    """
    |Σ_{b1,b2} e_p(θ(b1-b2)²)| <= |B1|^{1/2} E(B1,B1)^{1/8} |B2|^{1/2} E(B2,B2)^{1/8} p^{1/8}
    """
    p = as_prime_modulus(p).p
    theta = int(theta) % p
    if theta == 0:
        raise ZeroTheta(f"θ ≡ 0 (mod {p})")
    if B1.modulus != p or B2.modulus != p:
        raise ModulusMismatch(f"B1、B2 必须是 𝔽_{p} 的子集")
    cost = len(B1) * len(B2)
    if cost > EXP_SUM_LIMIT:
        raise TooLarge("exp_sum_energy_check", cost, EXP_SUM_LIMIT)

    b2 = B2.as_array()
    total = 0j
    for rows in split_range(0, len(B1), max(1, (1 << 20) // max(1, len(B2)))):
        b1 = B1.as_array()[rows.start:rows.stop]
        diffs = np.subtract.outer(b1, b2) % p
        phases = mulmod_array(theta, mulmod_array(diffs, diffs, p), p)
        total += complex(unit_phases(phases, p).sum())
    lhs = abs(total)

    e1 = additive_energy(B1, B1).energy
    e2 = additive_energy(B2, B2).energy
    rhs = (math.sqrt(len(B1)) * e1 ** 0.125 * math.sqrt(len(B2)) * e2 ** 0.125 * p ** 0.125)
    return {"lhs": lhs, "rhs": rhs, "pass": lhs <= rhs * (1 + 1e-9),
            "energies": [e1, e2], "set_sizes": [len(B1), len(B2)], "theta": theta, "p": p}


def real_embedding(frame_or_matrix) -> np.ndarray:
    """把 a+ib 换成 [[a, -b], [b, a]] 得到 2n×2N 实矩阵"""
    matrix = _rows(frame_or_matrix)
    re, im = matrix.real, matrix.imag
    return np.block([[re, -im], [im, re]])
