#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
命令行输出样式 - 退出码、状态图标、报告格式
"""

import json
import sys
from typing import Any, Dict

# 退出码
EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARAMETER = 2
EXIT_FORMAT = 3
EXIT_TOO_LARGE = 4
EXIT_CHECK_FAILED = 5

# 状态图标
ICON_OK = "✅"
ICON_FAIL = "❌"

# 横幅
BANNER_WIDTH = 60
BANNER_TITLE = "PhaseCert - 二次相位框架与稀疏集证书工具"

# 报告 JSON
REPORT_INDENT = 2

# 默认输出文件名
DEFAULT_FRAME_NAME = "frame.qpf"
DEFAULT_THINSET_NAME = "thinset.json"
DEFAULT_TURAN_NAME = "turan.json"

CERT_SUFFIX = ".cert.json"


def banner() -> str:
    line = "=" * BANNER_WIDTH
    return f"{line}\n{BANNER_TITLE}\n{line}"


def status(passed: bool) -> str:
    return ICON_OK if passed else ICON_FAIL


def emit_report(report: Dict[str, Any], stream=None):
    """报告写到标准输出，不含时间戳"""
    stream = stream or sys.stdout
    stream.write(json.dumps(report, ensure_ascii=False, indent=REPORT_INDENT, sort_keys=True))
    stream.write("\n")
    stream.flush()


def to_jsonable(value: Any) -> Any:
    """numpy 标量和数组转成 JSON 可序列化的值"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, float) and value == float("inf"):
        return None
    return value
