#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
核心功能模块
"""

from core.errors import PhaseCertError, ParameterError, FormatError, TooLarge
from core.scan_manager import ScanManager
from core.arith import PrimeModulus, as_prime_modulus, gauss_sum
from core.additive import ResidueSet, additive_energy, verify_cube_sumset_bound
from core.ripmat import QuadPhaseFrame, build_frame, coherence, flat_rip_constant, rip_report
from core.thinsets import ResidueMultiset, construct_thin_set, fourier_max_profile
from core.turan import TuranPointSet, construct_turan, power_sum_max

__all__ = [
    'PhaseCertError',
    'ParameterError',
    'FormatError',
    'TooLarge',
    'ScanManager',
    'PrimeModulus',
    'as_prime_modulus',
    'gauss_sum',
    'ResidueSet',
    'additive_energy',
    'verify_cube_sumset_bound',
    'QuadPhaseFrame',
    'build_frame',
    'coherence',
    'flat_rip_constant',
    'rip_report',
    'ResidueMultiset',
    'construct_thin_set',
    'fourier_max_profile',
    'TuranPointSet',
    'construct_turan',
    'power_sum_max',
]
