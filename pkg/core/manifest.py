#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
运行清单 - 记录命令行、参数、种子、版本、输出文件摘要与耗时
"""

import hashlib
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from core.formats import read_json, sibling, write_json

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


def file_digest(path: str) -> str:
    """文件的 SHA-256"""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunManifest:
    """一次运行的清单"""

    command_line: List[str]
    parameters: Dict[str, Any]
    seed: int
    threads: int
    version: str
    outputs: Dict[str, str] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    _started: float = field(default_factory=time.perf_counter, repr=False)

    def add_output(self, path: str) -> str:
        """记录输出文件的摘要"""
        digest = file_digest(path)
        self.outputs[os.path.basename(path)] = digest
        return digest

    def stop(self, name: str = "total_seconds"):
        self.timings[name] = round(time.perf_counter() - self._started, 6)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command_line": list(self.command_line),
            "parameters": dict(self.parameters),
            "seed": self.seed,
            "threads": self.threads,
            "version": self.version,
            "outputs": dict(self.outputs),
            "timings": dict(self.timings),
        }

    def write(self, primary_path: str) -> str:
        """写到 <stem>.manifest.json"""
        if "total_seconds" not in self.timings:
            self.stop()
        path = sibling(primary_path, MANIFEST_SUFFIX)
        write_json(path, self.to_dict())
        logger.info(f"✅ 清单已写入: {path}")
        return path


def load_manifest(path: str) -> Optional[Dict[str, Any]]:
    """读取清单，不存在返回 None"""
    if not os.path.exists(path):
        return None
    return read_json(path)
