#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
gen 子命令 - 构造框架、稀疏集与 Turán 点集，写出文件、证书与清单
"""

import logging
import math
import os
from typing import Any, Dict

from cli.styles import (CERT_SUFFIX, DEFAULT_FRAME_NAME, DEFAULT_THINSET_NAME,
                        DEFAULT_TURAN_NAME, EXIT_OK, emit_report, to_jsonable)
from core.arith import as_prime_modulus
from core.errors import ParameterError, TooLarge
from core.formats import sibling, write_json, write_matrix_binary, write_matrix_text, write_profile_csv
from core.manifest import RunManifest
from core.ripmat import (ConstructionParams, build_frame, build_set_A, build_set_B, coherence,
                         verify_dissociativity)
from core.scan_manager import ScanManager
from core.thinsets import construct_thin_set, fourier_max_profile
from core.turan import construct_turan

logger = logging.getLogger(__name__)


def _output_path(args, default_name: str) -> str:
    return args.out if args.out else os.path.join(args.out_dir, default_name)


def _manifest(args, parameters: Dict[str, Any]) -> RunManifest:
    return RunManifest(command_line=list(args.argv), parameters=to_jsonable(parameters),
                       seed=args.seed, threads=args.threads, version=args.version)


def expected_coherence(metadata: Dict[str, Any]) -> float:
    """前 N 列中至少有两个不同的 a 时为 1/√p，否则列两两正交"""
    distinct_a = math.ceil(metadata["N"] / max(1, len(metadata["set_B"])))
    return 1 / math.sqrt(metadata["p"]) if distinct_a >= 2 else 0.0


def gen_rip(args, manager: ScanManager) -> Dict[str, Any]:
    """构造二次相位框架"""
    p = as_prime_modulus(args.p)
    overrides = (args.L, args.U, args.M, args.r)
    if any(v is not None for v in overrides):
        if any(v is None for v in overrides):
            raise ParameterError("override 模式需要同时给出 --L --U --M --r")
        params = ConstructionParams.override(p, args.m, args.L, args.U, args.M, args.r, strict=args.strict)
    else:
        params = ConstructionParams.derived(p, args.m)

    set_A = build_set_A(p, params)
    set_B = build_set_B(p, params)
    frame = build_frame(p, set_A, set_B, args.N, args.n_rows, params)

    try:
        dissociativity = verify_dissociativity(set_A, p, params.m).to_dict()
    except TooLarge as e:
        logger.warning(f"⚠️ 跳过不相交性检查: {e}")
        dissociativity = None

    metadata = frame.to_metadata()
    mu = coherence(frame, manager) if frame.N >= 2 else None
    certificate = {
        "frame": metadata,
        "coherence": mu,
        "expected_coherence": expected_coherence(metadata),
        "dissociativity": dissociativity,
    }

    path = _output_path(args, DEFAULT_FRAME_NAME)
    if args.format == "text":
        write_matrix_text(path, frame.matrix)
    else:
        write_matrix_binary(path, frame.matrix)
    cert_path = write_json(sibling(path, CERT_SUFFIX), to_jsonable(certificate))

    manifest = _manifest(args, {"p": p.p, **params.to_dict(), "N": frame.N, "n_rows": frame.n_rows})
    manifest.add_output(path)
    manifest.add_output(cert_path)
    manifest.write(path)
    logger.info(f"✅ 框架已写入 {path}")
    return certificate


def gen_thinset(args, manager: ScanManager) -> Dict[str, Any]:
    """构造稀疏集"""
    mode = "one_iteration" if args.one_iteration else "two_stage"
    result = construct_thin_set(
        args.N, mu=args.mu, mode=mode, strict=args.strict, P=args.P, R=args.R,
        P0=args.P0, P1=args.P1, R0=args.R0, R1=args.R1, variant=args.variant,
        scan=args.scan, count=args.samples, seed=args.seed, manager=manager)

    path = _output_path(args, DEFAULT_THINSET_NAME)
    write_json(path, to_jsonable(result.to_dict()))
    certificate = to_jsonable(result.certificate.to_dict())
    cert_path = write_json(sibling(path, CERT_SUFFIX), certificate)

    manifest = _manifest(args, {"N": args.N, "mu": args.mu, "mode": mode, "P": args.P, "R": args.R,
                                "P0": args.P0, "P1": args.P1, "R0": args.R0, "R1": args.R1,
                                "variant": args.variant, "scan": args.scan, "strict": args.strict})
    manifest.add_output(path)
    manifest.add_output(cert_path)
    if args.emit_profile:
        profile = fourier_max_profile(result.multiset, keep_magnitudes=True, manager=manager)
        write_profile_csv(args.emit_profile, profile.frequencies, profile.magnitudes)
        manifest.add_output(args.emit_profile)
    manifest.write(path)
    return certificate


def gen_turan(args, manager: ScanManager) -> Dict[str, Any]:
    """构造 Turán 点集"""
    result = construct_turan(args.N, mu=args.mu, P0=args.P0, P1=args.P1, R0=args.R0,
                             strict=args.strict, variant=args.variant, manager=manager)
    path = _output_path(args, DEFAULT_TURAN_NAME)
    write_json(path, to_jsonable(result.to_dict()))
    certificate = to_jsonable(result.certificate.to_dict())
    cert_path = write_json(sibling(path, CERT_SUFFIX), certificate)

    manifest = _manifest(args, {"N": args.N, "mu": args.mu, "P0": args.P0, "P1": args.P1,
                                "R0": args.R0, "variant": args.variant, "strict": args.strict})
    manifest.add_output(path)
    manifest.add_output(cert_path)
    manifest.write(path)
    return certificate


GENERATORS = {
    "rip": gen_rip,
    "thinset": gen_thinset,
    "turan": gen_turan,
}


def cmd_gen(args) -> int:
    """gen 入口：构造并打印证书"""
    manager = ScanManager(args.threads)
    certificate = GENERATORS[args.target](args, manager)
    emit_report(certificate)
    return EXIT_OK


def add_parser(subparsers):
    """注册 gen 子命令"""
    gen = subparsers.add_parser("gen", help="构造框架 / 稀疏集 / Turán 点集")
    targets = gen.add_subparsers(dest="target", required=True)

    rip = targets.add_parser("rip", help="二次相位 RIP 框架")
    rip.add_argument("--p", type=int, required=True, help="素数 p")
    rip.add_argument("--m", type=int, default=2, help="偶数 m（默认 2）")
    rip.add_argument("--L", type=int)
    rip.add_argument("--U", type=int)
    rip.add_argument("--M", type=int)
    rip.add_argument("--r", type=int)
    rip.add_argument("--N", type=int, help="列数（默认 |A||B|）")
    rip.add_argument("--n-rows", dest="n_rows", type=int, help="行数（默认 p）")
    rip.add_argument("--format", choices=("binary", "text"), default="binary")
    rip.add_argument("--strict", action="store_true")
    rip.add_argument("--out")

    thin = targets.add_parser("thinset", help="Fourier 系数很小的稀疏集")
    thin.add_argument("--N", type=int, required=True, help="素数模数 N")
    thin.add_argument("--mu", type=float)
    stage = thin.add_mutually_exclusive_group()
    stage.add_argument("--one-iteration", dest="one_iteration", action="store_true")
    stage.add_argument("--two-stage", dest="one_iteration", action="store_false")
    thin.set_defaults(one_iteration=False)
    thin.add_argument("--P", type=float)
    thin.add_argument("--R", type=int)
    thin.add_argument("--P0", type=float)
    thin.add_argument("--P1", type=float)
    thin.add_argument("--R0", type=int)
    thin.add_argument("--R1", type=int)
    thin.add_argument("--variant", choices=("nonzero", "all_integers"), default="nonzero")
    thin.add_argument("--scan", choices=("full", "sampled"), default="full")
    thin.add_argument("--samples", type=int, default=100_000)
    thin.add_argument("--emit-profile", dest="emit_profile", help="同时写出 k,magnitude CSV")
    thin.add_argument("--strict", action="store_true")
    thin.add_argument("--out")

    turan = targets.add_parser("turan", help="Turán 幂和点集")
    turan.add_argument("--N", type=int, required=True)
    turan.add_argument("--mu", type=float)
    turan.add_argument("--P0", type=float)
    turan.add_argument("--P1", type=float)
    turan.add_argument("--R0", type=int)
    turan.add_argument("--variant", choices=("nonzero", "all_integers"), default="nonzero")
    turan.add_argument("--strict", action="store_true")
    turan.add_argument("--out")

    gen.set_defaults(func=cmd_gen)
    return gen
