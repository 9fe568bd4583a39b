#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
测试公共配置
"""

import os
import sys

import pytest

# 添加项目根目录到路径
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), ".."))

from core.scan_manager import ScanManager


@pytest.fixture
def manager():
    return ScanManager(1)


@pytest.fixture
def pool():
    return ScanManager(4)
