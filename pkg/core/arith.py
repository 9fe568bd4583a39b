#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
模运算与素数工具
素性检验、素数筛、模逆、Legendre 符号、单位根、Gauss 和
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Union

import numpy as np

from core.errors import NotCoprime, ParameterError, TooLarge, ZeroMultiplier

logger = logging.getLogger(__name__)

# 模数上限 2^63 - 1，素性检验覆盖全部 64 位整数
MAX_MODULUS = (1 << 63) - 1

# 对 n < 3.3e24 确定性成立的 Miller-Rabin 底数
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# 筛法上限，超过后逐个做 Miller-Rabin
_SIEVE_LIMIT = 50_000_000

# 直接求 Gauss 和的 p 上限
GAUSS_DIRECT_LIMIT = 100_000_000


@dataclass(frozen=True)
class PrimeModulus:
    """经过素性检验的模数 p"""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ParameterError(f"{self.p} 不是素数")

    @property
    def residue_class_mod4(self) -> int:
        return self.p % 4

    @property
    def sigma(self) -> complex:
        """Gauss 和的相位因子：p≡1 (mod 4) 时为 1，p≡3 时为 i"""
        return 1.0 + 0.0j if self.p % 4 == 1 else 1j

    def __int__(self) -> int:
        return self.p

    def to_dict(self) -> Dict[str, int]:
        return {"p": self.p, "residue_class_mod4": self.residue_class_mod4}


@dataclass(frozen=True)
class Residue:
    """模 m 的剩余"""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ParameterError(f"模数必须为正: {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ParameterError(f"剩余 {self.value} 不在 [0, {self.modulus}) 内")

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, Residue):
            return (self.value, self.modulus) == (other.value, other.modulus)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))


PrimeLike = Union[PrimeModulus, int]


def as_prime_modulus(p: PrimeLike) -> PrimeModulus:
    """int 或 PrimeModulus 统一转成 PrimeModulus"""
    return p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))


def is_prime(n: int) -> bool:
    """
    确定性 Miller-Rabin 素性检验
    :param n: 待检验的整数，需小于 2^64
    :return: 是否为素数
    """
    n = int(n)
    if n >= 1 << 64:
        raise ParameterError(f"{n} 超出 64 位，不支持素性检验")
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> np.ndarray:
    """埃氏筛，返回 <= limit 的全部素数"""
    limit = int(limit)
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p::p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def largest_prime_leq(n: int) -> PrimeModulus:
    """
    不超过 n 的最大素数
    :param n: 整数 n >= 2
    :return: PrimeModulus
    """
    n = int(n)
    if n < 2:
        raise ParameterError(f"n 必须 >= 2: {n}")
    candidate = n
    while not is_prime(candidate):
        candidate -= 1
    return PrimeModulus(candidate)


def smallest_prime_geq(n: int) -> PrimeModulus:
    """不小于 n 的最小素数"""
    candidate = max(2, int(n))
    while not is_prime(candidate):
        candidate += 1
    return PrimeModulus(candidate)


def primes_in_dyadic(P: float) -> List[int]:
    """
    区间 (P/2, P] 内的全部素数，升序
    :param P: 区间上端，P >= 3，可为实数
    :return: 素数列表
    """
    if P < 3:
        raise ParameterError(f"P 必须 >= 3: {P}")
    hi = math.floor(P)
    lo = math.floor(P / 2)
    if hi <= _SIEVE_LIMIT:
        primes = sieve_primes(hi)
        return [int(q) for q in primes[primes > lo]]
    return [q for q in range(lo + 1, hi + 1) if is_prime(q)]


def prime_count_bounds(P: float) -> Dict[str, object]:
    """
    (P/2, P] 内素数个数及其上下界
    下界 2P/(5 log(P/2)) 只在 P >= 250 时适用，上界 0.76 P/log P 对 P > 2 适用
    """
    count = len(primes_in_dyadic(P))
    lower = 2 * P / (5 * math.log(P / 2))
    upper = 0.76 * P / math.log(P)
    lower_applies = P >= 250
    return {
        "P": P,
        "count": count,
        "lower": lower,
        "upper": upper,
        "lower_applies": lower_applies,
        "lower_ok": (count > lower) if lower_applies else None,
        "upper_ok": count <= upper,
    }


def mod_inverse(a: int, m: int) -> Residue:
    """
    模逆 (a^{-1})_m
    :param a: 整数
    :param m: 模数 m >= 2
    :return: 满足 a·r ≡ 1 (mod m) 的 Residue，0 < r < m
    """
    a, m = int(a), int(m)
    if m < 2:
        raise ParameterError(f"模数必须 >= 2: {m}")
    g = math.gcd(a, m)
    if g != 1:
        raise NotCoprime(f"gcd({a}, {m}) = {g}")
    return Residue(pow(a % m, -1, m), m)


def reciprocity_holds(a: int, b: int) -> bool:
    """检查 (a^{-1})_b·a + (b^{-1})_a·b - 1 被 ab 整除（倒数互反关系的整数形式）"""
    inv_a = mod_inverse(a, b).value
    inv_b = mod_inverse(b, a).value
    return (inv_a * a + inv_b * b - 1) % (a * b) == 0


def legendre_symbol(d: int, p: PrimeLike) -> int:
    """
    Legendre 符号 (d/p)，p | d 时返回 0
    :param d: 整数
    :param p: 奇素数
    :return: -1、0 或 1
    """
    p = int(p)
    if p == 2:
        raise ParameterError("Legendre 符号要求奇素数")
    d %= p
    if d == 0:
        return 0
    return 1 if pow(d, (p - 1) // 2, p) == 1 else -1


def root_of_unity(x: int, m: int) -> complex:
    """
    e^{2πi x/m}，先做精确整数约化再调用三角函数
    """
    m = int(m)
    if m < 1:
        raise ParameterError(f"模数必须 >= 1: {m}")
    r = int(x) % m
    # 四分之一圈上的点直接给精确值
    if (4 * r) % m == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[(4 * r) // m]
    return cmath.exp(2j * math.pi * r / m)


def mulmod_array(a, b, m: int) -> np.ndarray:
    """
    逐元素 (a·b) mod m
    m < 2^31 时直接用 int64，否则转 Python 整数计算（相当于 128 位中间结果）
    """
    m = int(m)
    if m > MAX_MODULUS:
        raise ParameterError(f"模数超过 2^63-1: {m}")
    if m < 1 << 31:
        a64 = np.remainder(np.asarray(a, dtype=np.int64), m)
        b64 = np.remainder(np.asarray(b, dtype=np.int64), m)
        return (a64 * b64) % m
    a_obj = np.asarray(a, dtype=object) % m
    b_obj = np.asarray(b, dtype=object) % m
    return np.asarray((a_obj * b_obj) % m, dtype=np.int64)


def unit_phases(residues: np.ndarray, m: int) -> np.ndarray:
    """已约化的剩余 r 对应的 e^{2πi r/m}"""
    return np.exp((2j * math.pi / m) * np.asarray(residues, dtype=np.float64))


def gauss_sum(d: int, p: PrimeLike, mode: str = "direct") -> complex:
    """
    二次 Gauss 和 Σ_x e_p(d x^2)
    :param d: 非零剩余
    :param p: 奇素数
    :param mode: direct 直接求和 / closed_form 闭式 σ_p·√p·(d/p)
    :return: 复数
    """
    pm = as_prime_modulus(p)
    p = pm.p
    if p == 2:
        raise ParameterError("Gauss 和要求奇素数")
    if d % p == 0:
        raise ZeroMultiplier(f"d ≡ 0 (mod {p})")

    if mode == "closed_form":
        return pm.sigma * math.sqrt(p) * legendre_symbol(d, p)
    if mode != "direct":
        raise ParameterError(f"未知模式: {mode}")
    if p > GAUSS_DIRECT_LIMIT:
        raise TooLarge("gauss_sum direct", p, GAUSS_DIRECT_LIMIT)

    x = np.arange(p, dtype=np.int64)
    squares = mulmod_array(x, x, p)
    phases = mulmod_array(d % p, squares, p)
    return complex(unit_phases(phases, p).sum())
