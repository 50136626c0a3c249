"""Absolutely-PPT spectra of two qutrits: membership, boundary, extremality and the extreme families."""

from .criterion import Active, Kind, MembershipVerdict, build_L1, build_L2, classify, corner_inequality, is_ap
from .extremality import ExtremalityKind, ExtremalityVerdict, admissible_directions, build_t_system, extremality_test
from .families import (FamilySpec, eval_family, get_family, list_families, nu153_decompose, select_families,
                       special_point, verify_limit, zeta)
from .oracle import haar_unitary, mc_ppt_scan, partial_transpose, perturbation_decompose
from .spectrum import Spectrum, ThreeLevel, from_three_level, make_spectrum, pattern, uniform

__all__ = [
    "Active", "ExtremalityKind", "ExtremalityVerdict", "FamilySpec", "Kind", "MembershipVerdict",
    "Spectrum", "ThreeLevel", "admissible_directions", "build_L1", "build_L2", "build_t_system",
    "classify", "corner_inequality", "eval_family", "extremality_test", "from_three_level",
    "get_family", "haar_unitary", "is_ap", "list_families", "make_spectrum", "mc_ppt_scan",
    "nu153_decompose", "partial_transpose", "pattern", "perturbation_decompose", "select_families",
    "special_point", "uniform", "verify_limit", "zeta",
]
