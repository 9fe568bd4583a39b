#!/usr/bin/env python
# -*- coding: utf-8 -*-

import threading

import pytest

from core.scan_manager import ScanManager, split_range


def test_split_range_depends_only_on_size():
    assert split_range(0, 10, 4) == [range(0, 4), range(4, 8), range(8, 10)]
    assert split_range(5, 5, 3) == []


@pytest.mark.parametrize("threads", [1, 4])
def test_results_in_block_order(threads):
    manager = ScanManager(threads)
    assert manager.run_blocks(lambda b: b * b, list(range(20))) == [b * b for b in range(20)]
    assert manager.workers == {}


def test_first_failing_block_is_raised(pool):
    def work(block):
        if block in (3, 7):
            raise ValueError(f"block {block}")
        return block

    with pytest.raises(ValueError, match="block 3"):
        pool.run_blocks(work, list(range(10)))
    assert pool.workers == {}


@pytest.mark.parametrize("threads", [1, 4])
def test_nested_runs_keep_their_own_workers(threads):
    manager = ScanManager(threads)
    active = []
    lock = threading.Lock()

    def inner(x):
        with lock:
            active.append(len(manager.workers))
        return x * 2

    def outer(block):
        return manager.run_blocks(inner, [block, block + 1])

    assert manager.run_blocks(outer, [0, 10]) == [[0, 2], [20, 22]]
    assert min(active) >= 2
    assert manager.workers == {}


def test_concurrent_callers_share_one_manager(pool):
    results = {}

    def call(offset):
        results[offset] = pool.reduce_blocks(lambda b: b + offset, list(range(50)),
                                             lambda x, y: x + y, 0)

    threads = [threading.Thread(target=call, args=(k,)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == {k: sum(range(50)) + 50 * k for k in range(4)}
    assert pool.workers == {}


def test_progress_callback_reaches_hundred(manager):
    seen = []
    manager.run_blocks(lambda b: b, list(range(8)), lambda progress, message: seen.append(progress))
    assert seen[-1] == 100
    assert seen == sorted(seen)
