#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
export 子命令 - 格式转换（矩阵 text/binary、频谱 csv、证书 json）
"""

import logging
import os

import numpy as np

from cli.styles import CERT_SUFFIX, EXIT_OK, emit_report
from core.errors import FormatError, ParameterError
from core.formats import (detect_kind, is_binary_matrix, load_matrix, read_json, write_json,
                          write_matrix_binary, write_matrix_text, write_profile_csv)
from core.manifest import MANIFEST_SUFFIX, file_digest
from core.ripmat import real_embedding
from core.scan_manager import ScanManager
from core.thinsets import ResidueMultiset, fourier_max_profile
from core.turan import TuranPointSet, power_sum_max

logger = logging.getLogger(__name__)

EXTENSIONS = {"text": ".txt", "binary": ".qpf", "csv": ".csv", "json": ".export.json"}


def _default_output(path: str, fmt: str) -> str:
    stem = path[:-len(CERT_SUFFIX)] if path.endswith(CERT_SUFFIX) else os.path.splitext(path)[0]
    return stem + EXTENSIONS[fmt]


def export_matrix(path: str, fmt: str, out: str, real: bool = False) -> str:
    """real=True 时写出 2n×2N 实嵌入（虚部全为 0）"""
    matrix = load_matrix(path)
    if real:
        matrix = real_embedding(matrix).astype(np.complex128)
    if fmt == "text":
        return write_matrix_text(out, matrix)
    return write_matrix_binary(out, matrix)


def export_profile(path: str, out: str, manager: ScanManager) -> str:
    """集合导出 k,magnitude（N-1 行）；点集导出 k,|sum|（k = 1..N）"""
    data = read_json(path)
    kind = detect_kind(data)
    if kind == "points":
        points = TuranPointSet.from_dict(data)
        N = data.get("N")
        if not N:
            raise FormatError(f"{path} 缺少 N")
        result = power_sum_max(points, int(N), keep_profile=True, manager=manager)
        return write_profile_csv(out, range(1, int(N) + 1), result["profile"], header="k,|sum|")
    if kind == "multiset":
        S = ResidueMultiset.from_dict(data)
    elif kind == "residues":
        S = ResidueMultiset.of(data["modulus"], data["elements"])
    else:
        raise FormatError(f"csv 导出需要集合或点集文件，得到 {kind}")
    profile = fourier_max_profile(S, keep_magnitudes=True, manager=manager)
    return write_profile_csv(out, profile.frequencies, profile.magnitudes)


def export_certificate(path: str, out: str) -> str:
    """证书另存，并写入同一次运行清单的 SHA-256"""
    if not path.endswith(CERT_SUFFIX):
        raise FormatError(f"json 导出需要 *{CERT_SUFFIX} 证书文件: {path}")
    certificate = read_json(path)
    manifest_path = path[:-len(CERT_SUFFIX)] + MANIFEST_SUFFIX
    if not os.path.exists(manifest_path):
        raise FormatError(f"找不到对应的清单: {manifest_path}")
    certificate["manifest_sha256"] = file_digest(manifest_path)
    return write_json(out, certificate)


def cmd_export(args) -> int:
    """export 入口"""
    if not os.path.exists(args.input):
        raise FormatError(f"文件不存在: {args.input}")
    out = args.out or _default_output(args.input, args.format)
    if os.path.abspath(out) == os.path.abspath(args.input):
        raise FormatError("输出文件不能覆盖输入文件")

    if args.real and args.format not in ("text", "binary"):
        raise ParameterError("--real 只用于 text / binary 矩阵导出")
    if args.format in ("text", "binary"):
        if args.input.endswith(".json"):
            raise FormatError(f"{args.format} 导出需要矩阵文件")
        written = export_matrix(args.input, args.format, out, args.real)
    elif args.format == "csv":
        written = export_profile(args.input, out, ScanManager(args.threads))
    else:
        written = export_certificate(args.input, out)

    source = "binary" if args.format != "json" and is_binary_matrix(args.input) else "json"
    emit_report({"input": args.input, "output": written, "format": args.format,
                 "source": source, "real": args.real, "sha256": file_digest(written)})
    logger.info(f"✅ 已导出 {written}")
    return EXIT_OK


def add_parser(subparsers):
    """注册 export 子命令"""
    export = subparsers.add_parser("export", help="格式转换与证书导出")
    export.add_argument("input", help="输入文件")
    export.add_argument("--format", choices=("text", "binary", "csv", "json"), required=True)
    export.add_argument("--out", help="输出路径（默认与输入同名，换扩展名）")
    export.add_argument("--real", action="store_true", help="导出实嵌入 [[Re, -Im], [Im, Re]]")
    export.set_defaults(func=cmd_export)
    return export
