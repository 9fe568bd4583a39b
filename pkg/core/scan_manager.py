#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
扫描管理器 - 把大规模扫描切成固定的块并行执行
块的划分只取决于问题规模，与线程数无关，结果按块顺序合并
"""

import itertools
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence

from core.config import resolve_threads

logger = logging.getLogger(__name__)


class ScanWorker:
    """单个块的工作单元"""

    def __init__(self, block_id: int, func: Callable[[Any], Any], block: Any):
        self.block_id = block_id
        self.func = func
        self.block = block
        self.result: Any = None
        self.error: Optional[BaseException] = None

    def run(self) -> "ScanWorker":
        """执行扫描块"""
        try:
            self.result = self.func(self.block)
        except Exception as e:
            # 异常留给管理器按块顺序处理
            self.error = e
            logger.error(f"❌ 扫描块 {self.block_id} 失败: {e}")
        return self


class ScanManager:
    """扫描管理器"""

    def __init__(self, threads: Optional[int] = None):
        self.threads = resolve_threads(threads)
        # 运行编号 -> {块编号: 工作单元}，同一个管理器可以嵌套或并发调用
        self.workers: Dict[int, Dict[int, ScanWorker]] = {}
        self._lock = threading.RLock()
        self._run_ids = itertools.count()

    def run_blocks(self, func: Callable[[Any], Any], blocks: Sequence[Any],
                   progress_callback: Optional[Callable[[int, str], None]] = None) -> List[Any]:
        """
        并行执行所有块
        :param func: 处理单个块的函数
        :param blocks: 块列表
        :param progress_callback: 进度回调函数 callback(progress, message)
        :return: 按块顺序排列的结果
        """
        total = len(blocks)
        if total == 0:
            return []

        with self._lock:
            run_id = next(self._run_ids)
            self.workers[run_id] = {i: ScanWorker(i, func, block) for i, block in enumerate(blocks)}
        done = [0]
        last_progress = [-1]

        def execute(worker: ScanWorker) -> ScanWorker:
            worker.run()
            if progress_callback:
                with self._lock:
                    done[0] += 1
                    progress = int(done[0] * 100 / total)
                    # 只在进度变化时回调
                    if progress != last_progress[0]:
                        last_progress[0] = progress
                        progress_callback(progress, f"扫描中 {done[0]}/{total}")
            return worker

        ordered = [self.workers[run_id][i] for i in range(total)]
        if self.threads == 1 or total == 1:
            for worker in ordered:
                execute(worker)
        else:
            with ThreadPoolExecutor(max_workers=self.threads, thread_name_prefix="scan") as pool:
                list(pool.map(execute, ordered))

        for worker in ordered:
            if worker.error is not None:
                self._cleanup_run(run_id)
                raise worker.error

        results = [worker.result for worker in ordered]
        self._cleanup_run(run_id)
        return results

    def reduce_blocks(self, func: Callable[[Any], Any], blocks: Sequence[Any],
                      merge: Callable[[Any, Any], Any], initial: Any,
                      progress_callback: Optional[Callable[[int, str], None]] = None) -> Any:
        """执行并按块顺序归并（max / sum 等）"""
        value = initial
        for result in self.run_blocks(func, blocks, progress_callback):
            value = merge(value, result)
        return value

    def _cleanup_run(self, run_id: int):
        """清理一次运行的工作单元"""
        with self._lock:
            self.workers.pop(run_id, None)


def split_range(start: int, stop: int, block: int) -> List[range]:
    """把 [start, stop) 切成固定大小的块"""
    block = max(1, int(block))
    return [range(lo, min(lo + block, stop)) for lo in range(start, stop, block)]


def get_manager(manager: Optional[ScanManager] = None, threads: Optional[int] = None) -> ScanManager:
    """返回传入的管理器，或按线程数新建一个"""
    return manager if manager is not None else ScanManager(threads)
