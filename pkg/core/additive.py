#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
加性组合工具
和集、差集、加性能量、立方体上的和集增长指数 τ_M，
每个量都配有暴力求法，方便在小规模实例上核对不等式
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.arith import PrimeLike, as_prime_modulus, mulmod_array
from core.errors import (DimensionMismatch, EmptySet, LengthMismatch, ModulusMismatch,
                         NotInCube, PairOutOfRange, ParameterError, TooLarge, ZeroDilation)
from core.scan_manager import ScanManager, get_manager, split_range

logger = logging.getLogger(__name__)

BRUTE_ENERGY_LIMIT = 10 ** 6
DYADIC_ENERGY_LIMIT = 10 ** 8
TAU_ITERATIONS = 100
SLACK = 1e-9


@dataclass(frozen=True)
class ResidueSet:
    """模 m 的剩余集合，元素升序且不重复"""

    modulus: int
    elements: Tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ParameterError(f"模数必须 >= 1: {self.modulus}")
        for a, b in zip(self.elements, self.elements[1:]):
            if a >= b:
                raise ParameterError("元素必须严格升序")
        if self.elements and not (0 <= self.elements[0] and self.elements[-1] < self.modulus):
            raise ParameterError(f"元素必须在 [0, {self.modulus}) 内")

    @classmethod
    def of(cls, modulus: int, values: Iterable[int]) -> "ResidueSet":
        """约化、去重、排序后构造"""
        return cls(int(modulus), tuple(sorted({int(v) % int(modulus) for v in values})))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def negate(self) -> "ResidueSet":
        """-A"""
        return ResidueSet.of(self.modulus, (-a for a in self.elements))

    def dilate(self, b: int) -> "ResidueSet":
        """bA"""
        values = mulmod_array(self.as_array(), b, self.modulus) if self.elements else []
        return ResidueSet.of(self.modulus, values)

    def to_dict(self) -> Dict[str, Any]:
        return {"modulus": self.modulus, "elements": list(self.elements)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ResidueSet":
        return cls.of(data["modulus"], data["elements"])


@dataclass(frozen=True)
class CubePoint:
    """立方体 {0,...,M-1}^r 中的点"""

    digits: Tuple[int, ...]
    M: int

    def __post_init__(self):
        if self.M < 2:
            raise ParameterError(f"M 必须 >= 2: {self.M}")
        for x in self.digits:
            if not 0 <= x < self.M:
                raise NotInCube(f"坐标 {x} 不在 [0, {self.M}) 内")

    @property
    def r(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class TauSolution:
    """和集增长指数 τ_M 与 τ'_M"""

    M: int
    tau: float
    tau_prime: float
    residual: float

    def to_dict(self) -> Dict[str, Any]:
        return {"M": self.M, "tau": self.tau, "tau_prime": self.tau_prime, "residual": self.residual}


@dataclass(frozen=True)
class EnergyReport:
    """加性能量报告"""

    energy: int
    set_sizes: Tuple[int, int]
    ratio_to_cube: float
    mode: str = "convolution"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "energy": self.energy,
            "set_sizes": list(self.set_sizes),
            "ratio_to_cube": self.ratio_to_cube,
            "mode": self.mode,
        }


@dataclass
class InequalityReport:
    """lhs 与 rhs 的比较结果"""

    lhs: float
    rhs: float
    passed: bool
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = {"lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}
        data.update(self.extra)
        return data


def _check_same_modulus(A: ResidueSet, B: ResidueSet):
    if A.modulus != B.modulus:
        raise ModulusMismatch(f"模数不同: {A.modulus} != {B.modulus}")


def set_combine(A: ResidueSet, B: ResidueSet, mode: str = "sum",
                pairs: Optional[Sequence[Tuple[int, int]]] = None) -> ResidueSet:
    """
    和集 / 差集 / 受限和集
    :param A: 集合 A
    :param B: 集合 B
    :param mode: sum、difference 或 restricted
    :param pairs: restricted 模式下的配对 F ⊂ A×B
    :return: 结果集合（模共同的模数）
    """
    _check_same_modulus(A, B)
    m = A.modulus
    if mode == "restricted":
        a_set, b_set = set(A.elements), set(B.elements)
        pairs = list(pairs or [])
        for a, b in pairs:
            if a not in a_set or b not in b_set:
                raise PairOutOfRange(f"配对 ({a}, {b}) 不在 A×B 中")
        return ResidueSet.of(m, ((a + b) for a, b in pairs))
    if not A.elements or not B.elements:
        return ResidueSet(m, ())
    a, b = A.as_array(), B.as_array()
    if mode == "sum":
        values = np.add.outer(a, b) % m
    elif mode == "difference":
        values = np.subtract.outer(a, b) % m
    else:
        raise ParameterError(f"未知模式: {mode}")
    return ResidueSet(m, tuple(int(v) for v in np.unique(values)))


def _energy_convolution(a: np.ndarray, b: np.ndarray, m: int) -> int:
    """对排序后的和计数，E = Σ r(x)^2"""
    sums = (np.add.outer(a, b) % m).ravel()
    _, counts = np.unique(sums, return_counts=True)
    return int(np.dot(counts, counts))


def _energy_brute(a: np.ndarray, b: np.ndarray, m: int) -> int:
    """逐个 (a1, b1, b2) 检查 a1 + b1 - b2 是否落在 A 中"""
    indicator = np.zeros(m, dtype=np.int64)
    indicator[a] = 1
    diffs = np.subtract.outer(b, b) % m
    total = 0
    for a1 in a:
        total += int(indicator[(a1 + diffs) % m].sum())
    return total


def additive_energy(A: ResidueSet, B: ResidueSet, mode: str = "convolution") -> EnergyReport:
    """
    加性能量 E(A,B)：a1+b1 ≡ a2+b2 的四元组个数
    :param mode: brute 暴力计数 / convolution 对和的重数计数 ‖1_A*1_B‖_2^2
    :return: EnergyReport
    """
    _check_same_modulus(A, B)
    m = A.modulus
    size_a, size_b = len(A), len(B)
    if size_a == 0 or size_b == 0:
        return EnergyReport(0, (size_a, size_b), 0.0, mode)

    a, b = A.as_array(), B.as_array()
    if mode == "brute":
        if size_a * size_b > BRUTE_ENERGY_LIMIT:
            raise TooLarge("additive_energy brute", size_a * size_b, BRUTE_ENERGY_LIMIT)
        energy = _energy_brute(a, b, m)
    elif mode == "convolution":
        energy = _energy_convolution(a, b, m)
    else:
        raise ParameterError(f"未知模式: {mode}")

    ratio = energy / (size_a ** 2 * min(size_a, size_b))
    return EnergyReport(energy, (size_a, size_b), ratio, mode)


def check_plunnecke_ruzsa(A: ResidueSet) -> InequalityReport:
    """|A+A| <= |A-A|^2 / |A|"""
    if not A.elements:
        raise EmptySet("A 为空")
    sum_size = len(set_combine(A, A, "sum"))
    diff_size = len(set_combine(A, A, "difference"))
    bound = diff_size ** 2 / len(A)
    return InequalityReport(sum_size, bound, sum_size <= bound + SLACK,
                            {"sum_size": sum_size, "difference_size": diff_size})


def _tau_equation(tau: float, M: int) -> float:
    return (1.0 / M) ** (2 * tau) + ((M - 1) / M) ** tau - 1.0


@lru_cache(maxsize=None)
def tau_solver(M: int) -> TauSolution:
    """
    求 (1/M)^{2τ} + ((M-1)/M)^τ = 1 在 (1/2, 1] 上的根（二分法）
    :param M: M >= 2
    :return: TauSolution，附带 τ' = log(2M-1) / (2 log M)
    """
    M = int(M)
    if M < 2:
        raise ParameterError(f"M 必须 >= 2: {M}")
    lo, hi = 0.5, 1.0
    # f 在区间上严格递减：f(1/2) > 0 > f(1)
    for _ in range(TAU_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if _tau_equation(mid, M) > 0:
            lo = mid
        else:
            hi = mid
    tau = 0.5 * (lo + hi)
    tau_prime = math.log(2 * M - 1) / (2 * math.log(M))
    return TauSolution(M, tau, tau_prime, abs(_tau_equation(tau, M)))


def cube_encode(point: Union[CubePoint, Sequence[int]], M: Optional[int] = None) -> int:
    """Φ^{-1}：(x_1,...,x_r) -> Σ x_j (2M)^{j-1}"""
    if not isinstance(point, CubePoint):
        point = CubePoint(tuple(int(x) for x in point), int(M))
    base = 2 * point.M
    value = 0
    for x in reversed(point.digits):
        value = value * base + x
    return value


def cube_decode(value: int, M: int, r: int) -> CubePoint:
    """Φ：把 Σ x_j (2M)^{j-1} 还原成立方体中的点"""
    value, M, r = int(value), int(M), int(r)
    base = 2 * M
    if value < 0 or value >= base ** r:
        raise NotInCube(f"{value} 超出 (2M)^r = {base ** r}")
    digits = []
    for _ in range(r):
        value, x = divmod(value, base)
        if x >= M:
            raise NotInCube(f"数字 {x} 落在 [M, 2M) 内")
        digits.append(x)
    return CubePoint(tuple(digits), M)


def cube_codec(value_or_digits, M: int, r: int) -> Union[CubePoint, int]:
    """
    立方体与 ℬ 之间的 Freiman 同构
    传入整数则解码成 CubePoint，传入数字序列 / CubePoint 则编码成整数
    """
    if isinstance(value_or_digits, (int, np.integer)):
        return cube_decode(int(value_or_digits), M, r)
    if isinstance(value_or_digits, CubePoint):
        point = value_or_digits
    else:
        point = CubePoint(tuple(int(x) for x in value_or_digits), int(M))
    if point.M != M or point.r != r:
        raise DimensionMismatch(f"点的 (M, r) = ({point.M}, {point.r}) 与 ({M}, {r}) 不符")
    return cube_encode(point)


def _cube_geometry(points: Sequence[CubePoint]) -> Tuple[int, int]:
    M, r = points[0].M, points[0].r
    for pt in points:
        if pt.M != M or pt.r != r:
            raise DimensionMismatch("点不在同一个立方体中")
    return M, r


def _sum_grid_codes(points: Sequence[CubePoint], M: int) -> np.ndarray:
    """按 2M-1 进制编码，坐标和 <= 2M-2 时编码互不冲突"""
    base = 2 * M - 1
    codes = []
    for pt in points:
        value = 0
        for x in reversed(pt.digits):
            value = value * base + x
        codes.append(value)
    return np.asarray(codes, dtype=np.int64)


def verify_cube_sumset_bound(A: Sequence[CubePoint], B: Sequence[CubePoint]) -> InequalityReport:
    """
    检查 |A+B| >= (|A||B|)^τ（ℤ^r 中逐坐标相加，不取模）
    同时给出 τ' 下的比较，仅作参考，不影响 pass
    """
    A, B = list(dict.fromkeys(A)), list(dict.fromkeys(B))
    if not A or not B:
        raise EmptySet("A 或 B 为空")
    M, r = _cube_geometry(A)
    if _cube_geometry(B) != (M, r):
        raise DimensionMismatch("A 与 B 不在同一个立方体中")

    sums = np.add.outer(_sum_grid_codes(A, M), _sum_grid_codes(B, M))
    lhs = int(np.unique(sums).size)
    sol = tau_solver(M)
    product = len(A) * len(B)
    rhs = product ** sol.tau
    rhs_prime = product ** sol.tau_prime
    return InequalityReport(float(lhs), rhs, lhs >= rhs - SLACK, {
        "M": M, "r": r, "tau": sol.tau,
        "rhs_tau_prime": rhs_prime,
        "pass_tau_prime": lhs >= rhs_prime - SLACK,
    })


def verify_difference_growth(B: Sequence[CubePoint]) -> InequalityReport:
    """
    |B-B| >= |B|^{2τ}：-B 平移 (M-1,...,M-1) 后仍在立方体中，化为和集问题
    """
    B = list(dict.fromkeys(B))
    if not B:
        raise EmptySet("B 为空")
    M, r = _cube_geometry(B)
    reflected = [CubePoint(tuple(M - 1 - x for x in pt.digits), M) for pt in B]
    report = verify_cube_sumset_bound(B, reflected)
    report.extra["difference_size"] = int(report.lhs)
    return report


def _popcount(values: np.ndarray) -> np.ndarray:
    """int64 数组逐元素数 1 的个数"""
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)
    as_bytes = values.astype(np.uint64).view(np.uint8).reshape(values.shape + (8,))
    return table[as_bytes].sum(axis=-1)


def exhaustive_cube_scan(M: int, r: int, manager: Optional[ScanManager] = None,
                         threads: Optional[int] = None) -> Dict[str, Any]:
    """
    穷举立方体 𝒞_{M,r} 的所有非空子集对 (A, B)，检查 |A+B| >= (|A||B|)^τ
    用位掩码表示和集：sum(A, B) = sum(A 去掉最低位, B) | S_low(B)
    :return: 汇总报告 {pairs_checked, failures, min_slack, ...}
    """
    points = [CubePoint(d, M) for d in itertools.product(range(M), repeat=r)]
    size = len(points)
    if size > 12:
        raise TooLarge("exhaustive_cube_scan", float(4 ** size), float(4 ** 12))
    grid_codes = _sum_grid_codes(points, M)
    if int(grid_codes.max()) * 2 >= 63:
        raise TooLarge("exhaustive_cube_scan sum grid", float((2 * M - 1) ** r), 63.0)

    subsets = 1 << size
    masks = np.arange(subsets, dtype=np.int64)
    # shift[i][B] = 由 points[i] + B 组成的和集掩码
    shift = np.zeros((size, subsets), dtype=np.int64)
    for i in range(size):
        for j in range(size):
            bit = np.int64(1) << np.int64(grid_codes[i] + grid_codes[j])
            shift[i] |= np.where((masks >> j) & 1, bit, np.int64(0))
    sumset = np.zeros((subsets, subsets), dtype=np.int64)
    for a_mask in range(1, subsets):
        low = (a_mask & -a_mask).bit_length() - 1
        sumset[a_mask] = sumset[a_mask & (a_mask - 1)] | shift[low]

    sizes = _popcount(masks)
    tau = tau_solver(M).tau

    def scan(block: range) -> Tuple[int, int, float]:
        rows = np.arange(block.start, block.stop)
        lhs = _popcount(sumset[rows, 1:])
        rhs = np.power(np.outer(sizes[rows], sizes[1:]).astype(np.float64), tau)
        slack = lhs - rhs
        return int(slack.size), int((slack < -SLACK).sum()), float(slack.min())

    def merge(acc, item):
        return (acc[0] + item[0], acc[1] + item[1], min(acc[2], item[2]))

    manager = get_manager(manager, threads)
    checked, failures, min_slack = manager.reduce_blocks(
        scan, split_range(1, subsets, 64), merge, (0, 0, math.inf))
    logger.info(f"📊 𝒞_{M},{r} 穷举完成: {checked} 对, 失败 {failures}")
    return {"M": M, "r": r, "tau": tau, "pairs_checked": checked,
            "failures": failures, "min_slack": min_slack, "pass": failures == 0}


def check_unordered_inequality(U: Sequence[float], V: Sequence[float],
                               tau: Optional[float] = None) -> InequalityReport:
    """
    Σ_μ max_{κ+λ=μ} (U_κ V_λ)^τ >= (ΣU)^τ (ΣV)^τ
    :param tau: 默认 τ_M，M 为向量长度
    """
    U = np.asarray(U, dtype=np.float64)
    V = np.asarray(V, dtype=np.float64)
    if U.shape != V.shape or U.ndim != 1:
        raise LengthMismatch(f"长度不一致: {U.shape} vs {V.shape}")
    M = U.size
    if M < 2:
        raise ParameterError("长度必须 >= 2")
    if (U < 0).any() or (V < 0).any():
        raise ParameterError("元素必须非负")
    if tau is None:
        tau = tau_solver(M).tau

    products = np.power(np.outer(U, V), tau)
    # 反对角线 κ+λ=μ 对应翻转后矩阵的对角线
    flipped = products[:, ::-1]
    lhs = float(sum(flipped.diagonal(offset).max() for offset in range(M - 1, -M, -1)))
    rhs = float(U.sum() ** tau * V.sum() ** tau)
    return InequalityReport(lhs, rhs, lhs >= rhs - SLACK, {"tau": tau})


def dyadic_energy_scan(A: ResidueSet, B: ResidueSet, p: PrimeLike,
                       manager: Optional[ScanManager] = None,
                       threads: Optional[int] = None) -> Dict[str, Any]:
    """
    Σ_{b∈B} E(A, bA) 的精确值，仅作测量，不判断通过与否
    """
    p = as_prime_modulus(p).p
    if A.modulus != p or B.modulus != p:
        raise ModulusMismatch(f"A、B 必须是 𝔽_{p} 的子集")
    if 0 in B.elements:
        raise ZeroDilation("B 含 0")
    cost = len(A) ** 2 * len(B)
    if cost > DYADIC_ENERGY_LIMIT:
        raise TooLarge("dyadic_energy_scan", cost, DYADIC_ENERGY_LIMIT)

    b_values = list(B.elements)

    def scan(block: range) -> int:
        return sum(additive_energy(A, A.dilate(b_values[i])).energy for i in block)

    manager = get_manager(manager, threads)
    total = manager.reduce_blocks(scan, split_range(0, len(b_values), 16), lambda x, y: x + y, 0)
    denominator = len(A) ** 3 * len(B)
    return {
        "total": total,
        "normalized": total / denominator if denominator else 0.0,
        "set_sizes": [len(A), len(B)],
        "p": p,
    }
