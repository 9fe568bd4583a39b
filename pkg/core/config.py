#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
配置加载 - 读取项目根目录的 config.json
"""

import copy
import json
import logging
import os
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "config.json")

THREADS_ENV = "PHASECERT_THREADS"

DEFAULT_CONFIG: Dict[str, Any] = {
    "app": {
        "name": "PhaseCert",
        "version": "1.0.0",
        "author": "PhaseCert Team"
    },
    "run": {
        "seed": 20100417,
        "threads": 1,
        "output_dir": "phasecert_runs"
    },
    "scan": {
        "fourier_block_elements": 1 << 20,
        "gram_block_columns": 256,
        "support_batch": 2048,
        "sample_chunk": 10000
    },
    "logging": {
        "level": "INFO",
        "format": "%(asctime)s :: %(levelname)s :: (%(threadName)-6s) :: %(message)s"
    }
}

_cache: Dict[str, Dict[str, Any]] = {}
_active_path: Optional[str] = None


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """递归合并配置字典"""
    result = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _merge(result[key], value)
        else:
            result[key] = value
    return result


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    加载配置
    :param path: 配置文件路径（可选，默认为根目录 config.json）
    :return: 与默认值合并后的配置
    """
    path = os.path.abspath(path or _active_path or CONFIG_PATH)
    if path in _cache:
        return copy.deepcopy(_cache[path])

    config = DEFAULT_CONFIG
    if os.path.exists(path):
        try:
            with open(path, "r", encoding="utf-8") as f:
                config = _merge(DEFAULT_CONFIG, json.load(f))
        except (OSError, ValueError) as e:
            logger.warning(f"⚠️ 配置文件读取失败，使用默认配置: {e}")
    _cache[path] = config
    return copy.deepcopy(config)


def scan_setting(name: str) -> int:
    """读取 scan 段的块大小设置"""
    return int(load_config()["scan"][name])


def resolve_threads(cli_value: Optional[int] = None, config: Optional[Dict[str, Any]] = None) -> int:
    """
    线程数：命令行 > 环境变量 > 配置文件 > 1
    """
    if cli_value is not None:
        return max(1, int(cli_value))
    env_value = os.environ.get(THREADS_ENV)
    if env_value:
        try:
            return max(1, int(env_value))
        except ValueError:
            logger.warning(f"⚠️ 环境变量 {THREADS_ENV}={env_value!r} 无效，忽略")
    config = config or load_config()
    return max(1, int(config["run"].get("threads", 1)))


def default_seed(config: Optional[Dict[str, Any]] = None) -> int:
    """默认随机种子（固定值）"""
    config = config or load_config()
    return int(config["run"]["seed"])


def use_config(path: Optional[str]):
    """切换后续 load_config() 默认读取的配置文件（--config）"""
    global _active_path
    if path is not None and not os.path.exists(path):
        logger.warning(f"⚠️ 配置文件不存在，使用默认配置: {path}")
    _active_path = path
