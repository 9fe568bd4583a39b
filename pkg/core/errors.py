#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
异常定义 - 所有模块共用的错误类型
每个异常带有 exit_code，命令行按它返回退出码
"""

from typing import Iterable, List, Optional


class PhaseCertError(Exception):
    """基础异常"""

    exit_code = 1


class ParameterError(PhaseCertError):
    """参数不满足前置条件"""

    exit_code = 2


class ParameterConditionViolated(ParameterError):
    """严格模式下不等式条件不成立"""

    def __init__(self, violations: Iterable[str]):
        self.violations: List[str] = list(violations)
        super().__init__("参数条件不成立: " + "; ".join(self.violations))


class ParamsTooLarge(ParameterError):
    """推导参数需要的 p 超出可计算范围"""


class CubeOverflow(ParameterError):
    """(2M)^r 超过 p"""


class ModulusTooSmall(ParameterError):
    """模数不大于素数区间上界"""


class TooManyColumns(ParameterError):
    """请求的列数超过 |A||B|"""


class NotCoprime(ParameterError):
    """求逆时 gcd(a, m) != 1"""


class ZeroMultiplier(ParameterError):
    """Gauss 和的系数为 0"""


class ModulusMismatch(ParameterError):
    """两个集合的模数不同"""


class PairOutOfRange(ParameterError):
    """受限和的配对不在 A×B 中"""


class NotInCube(ParameterError):
    """解码出的数字落在 [M, 2M)"""


class EmptySet(ParameterError):
    """集合为空"""


class DimensionMismatch(ParameterError):
    """立方体维数或 M 不一致"""


class LengthMismatch(ParameterError):
    """向量长度不一致"""


class ZeroDilation(ParameterError):
    """伸缩因子集合含 0"""


class ZeroTheta(ParameterError):
    """指数和的 θ 为 0"""


class DuplicateElements(ParameterError):
    """构造出的元素在模 p 下重复"""


class UnequalStageSizes(ParameterError):
    """各阶段集合大小不一致"""


class StageSizeMismatch(ParameterError):
    """Turán 构造中某个 |S_q| 不一致"""


class FormatError(PhaseCertError):
    """输入文件格式错误"""

    exit_code = 3


class TooLarge(PhaseCertError):
    """计算量超过上限"""

    exit_code = 4

    def __init__(self, what: str, cost: float, limit: float, detail: Optional[str] = None):
        self.what = what
        self.cost = cost
        self.limit = limit
        message = f"{what}: 估计计算量 {cost:.4g} 超过上限 {limit:.4g}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)
