#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
PhaseCert - 二次相位框架与稀疏集证书工具
"""

__version__ = "1.0.0"
__author__ = "PhaseCert Team"
__description__ = "确定性 RIP 框架、Fourier 稀疏集与 Turán 点集的构造与验证"
