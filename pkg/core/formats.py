#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
文件格式 - 矩阵（二进制 / 文本）、集合与点集 JSON、频谱 CSV
"""

import json
import logging
import os
import struct
from typing import Any, Dict, Iterable, Tuple

import numpy as np

from core.errors import FormatError

logger = logging.getLogger(__name__)

MATRIX_MAGIC = b"QPF1"
_HEADER = struct.Struct("<QQ")


def write_json(path: str, data: Dict[str, Any]) -> str:
    """写 JSON（键排序，结尾换行），保证同样的内容得到同样的字节"""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")
    return path


def read_json(path: str) -> Dict[str, Any]:
    """读 JSON，失败时抛出 FormatError"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise FormatError(f"文件不存在: {path}")
    except (OSError, ValueError) as e:
        raise FormatError(f"JSON 解析失败 {path}: {e}")
    if not isinstance(data, dict):
        raise FormatError(f"{path} 顶层必须是对象")
    return data


def write_matrix_binary(path: str, matrix: np.ndarray) -> str:
    """QPF1 + u64 n + u64 N + 行优先的 (re, im) 小端 f64"""
    matrix = np.ascontiguousarray(matrix, dtype="<c16")
    n, N = matrix.shape
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "wb") as f:
        f.write(MATRIX_MAGIC)
        f.write(_HEADER.pack(n, N))
        f.write(matrix.tobytes())
    return path


def read_matrix_binary(path: str) -> np.ndarray:
    """读取二进制矩阵"""
    try:
        with open(path, "rb") as f:
            payload = f.read()
    except OSError as e:
        raise FormatError(f"无法读取 {path}: {e}")
    if payload[:4] != MATRIX_MAGIC:
        raise FormatError(f"{path} 不是 QPF1 矩阵文件")
    if len(payload) < 4 + _HEADER.size:
        raise FormatError(f"{path} 文件头不完整")
    n, N = _HEADER.unpack_from(payload, 4)
    body = payload[4 + _HEADER.size:]
    if len(body) != n * N * 16:
        raise FormatError(f"{path} 数据长度 {len(body)} 与 {n}×{N} 不符")
    return np.frombuffer(body, dtype="<c16").reshape(n, N).astype(np.complex128)


def _format_entry(z: complex) -> str:
    return f"{z.real:.17g},{z.imag:.17g}"


def write_matrix_text(path: str, matrix: np.ndarray) -> str:
    """首行 "n N"，之后每行 N 个 "re,im"（17 位有效数字）"""
    matrix = np.asarray(matrix, dtype=np.complex128)
    n, N = matrix.shape
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{n} {N}\n")
        for row in matrix:
            f.write(" ".join(_format_entry(z) for z in row))
            f.write("\n")
    return path


def read_matrix_text(path: str) -> np.ndarray:
    """读取文本矩阵"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().split("\n")
    except (OSError, UnicodeDecodeError) as e:
        raise FormatError(f"无法读取 {path}: {e}")
    try:
        n, N = (int(x) for x in lines[0].split())
    except ValueError:
        raise FormatError(f"{path} 首行必须是 \"n N\"")
    rows = [line for line in lines[1:] if line.strip()]
    if len(rows) != n:
        raise FormatError(f"{path} 行数 {len(rows)} 与 n = {n} 不符")
    matrix = np.empty((n, N), dtype=np.complex128)
    for i, line in enumerate(rows):
        entries = line.split()
        if len(entries) != N:
            raise FormatError(f"{path} 第 {i + 2} 行有 {len(entries)} 项，应为 {N}")
        for j, entry in enumerate(entries):
            try:
                re, im = entry.split(",")
                matrix[i, j] = complex(float(re), float(im))
            except ValueError:
                raise FormatError(f"{path} 第 {i + 2} 行无法解析: {entry!r}")
    return matrix


def is_binary_matrix(path: str) -> bool:
    try:
        with open(path, "rb") as f:
            return f.read(4) == MATRIX_MAGIC
    except OSError as e:
        raise FormatError(f"无法读取 {path}: {e}")


def load_matrix(path: str) -> np.ndarray:
    """按文件头自动识别二进制或文本矩阵"""
    if is_binary_matrix(path):
        return read_matrix_binary(path)
    return read_matrix_text(path)


def detect_kind(data: Dict[str, Any]) -> str:
    """
    判断 JSON 内容的类型
    :return: points / multiset / residues / residue_pair / cube_pair / frame_cert
    """
    if "points" in data:
        return "points"
    if "frame" in data:
        return "frame_cert"
    if "M" in data and "r" in data:
        return "cube_pair"
    if "modulus" in data and "A" in data:
        return "residue_pair"
    if "modulus" in data and "elements" in data:
        elements = data["elements"]
        if not isinstance(elements, list):
            raise FormatError("elements 必须是数组")
        if elements and isinstance(elements[0], list):
            return "multiset"
        return "residues"
    raise FormatError("无法识别的 JSON 文件内容")


def write_profile_csv(path: str, ks: Iterable[int], values: Iterable[float],
                      header: str = "k,magnitude") -> str:
    """频谱 CSV：表头 + 每个 k 一行"""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(header + "\n")
        for k, v in zip(ks, values):
            f.write(f"{int(k)},{float(v):.17g}\n")
    return path


def read_profile_csv(path: str) -> Tuple[np.ndarray, np.ndarray]:
    """读取频谱 CSV"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = [line for line in f.read().split("\n")[1:] if line]
        ks = np.array([int(line.split(",")[0]) for line in lines], dtype=np.int64)
        values = np.array([float(line.split(",")[1]) for line in lines])
    except (OSError, ValueError, IndexError) as e:
        raise FormatError(f"CSV 解析失败 {path}: {e}")
    return ks, values


def sibling(path: str, suffix: str) -> str:
    """frame.qpf -> frame<suffix>"""
    stem, _ = os.path.splitext(path)
    return stem + suffix
