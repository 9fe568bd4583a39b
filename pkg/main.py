#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
PhaseCert - 二次相位框架与稀疏集证书工具
主入口文件
"""

import argparse
import logging
import os
import sys

# 添加项目目录到路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli import export, gen, verify
from cli.styles import EXIT_INTERNAL, banner
from core.config import default_seed, load_config, resolve_threads, use_config
from core.errors import PhaseCertError

logger = logging.getLogger("phasecert")


def setup_logging(level: str, fmt: str):
    """日志写到标准错误，标准输出只留给报告"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=fmt,
        stream=sys.stderr,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    parser = argparse.ArgumentParser(prog="phasecert", description="二次相位框架与稀疏集证书工具")
    parser.add_argument("--config", help="配置文件路径（默认 config.json）")
    parser.add_argument("--seed", type=int, help="随机种子（默认取配置文件）")
    parser.add_argument("--threads", type=int, help="线程数（也可用环境变量 PHASECERT_THREADS）")
    parser.add_argument("--out-dir", dest="out_dir", help="输出目录")
    parser.add_argument("--log-level", dest="log_level", help="日志级别")

    subparsers = parser.add_subparsers(dest="command", required=True)
    gen.add_parser(subparsers)
    verify.add_parser(subparsers)
    export.add_parser(subparsers)
    return parser


def main(argv=None) -> int:
    """主函数：返回退出码"""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 的用法错误是参数错误
        return 2 if e.code else 0

    use_config(args.config)
    config = load_config()
    setup_logging(args.log_level or config["logging"]["level"], config["logging"]["format"])

    args.argv = ["phasecert"] + argv
    args.version = config["app"]["version"]
    args.seed = args.seed if args.seed is not None else default_seed(config)
    args.threads = resolve_threads(args.threads, config)
    args.out_dir = args.out_dir or config["run"]["output_dir"]

    for line in banner().splitlines():
        logger.info(line)
    logger.info(f"🔧 命令: {' '.join(args.argv)} | seed={args.seed} threads={args.threads}")

    try:
        return args.func(args)
    except PhaseCertError as e:
        logger.debug("详细错误", exc_info=True)
        sys.stderr.write(f"phasecert: {type(e).__name__}: {e}\n")
        return e.exit_code
    except Exception as e:
        logger.exception(f"❌ 内部错误: {e}")
        sys.stderr.write(f"phasecert: internal error: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
