"""Numerical services: kernels, coefficients, the identity engine and the reciprocity laws."""

from .dedekind_sums import (
    apostol_reciprocity,
    apostol_sum,
    bezout_pair,
    dedekind_cotangent_sum,
    fukuhara_instance,
    r2_identity,
    r2_reciprocity,
    sgn2,
    zagier_reciprocity,
)
from .exact_numbers import PiScaled, alpha, bernoulli
from .identity_engine import Corruption, IdentityEngine, PrincipalParts, get_identity_engine, sample_family
from .laurent_coeffs import coeff_A, sgn, shift_test
from .oracle import contour_coefficient, contour_coefficients, finite_diff_check, phi_series
from .pole_combinatorics import classify_case, compositions_K, enumerate_poles, multiplicity_d, residue_subsets
from .trig_kernel import cot_poly, csc_poly, limit_check, phi, phi_at_rational

__all__ = [
    "Corruption",
    "IdentityEngine",
    "PiScaled",
    "PrincipalParts",
    "alpha",
    "apostol_reciprocity",
    "apostol_sum",
    "bernoulli",
    "bezout_pair",
    "classify_case",
    "coeff_A",
    "compositions_K",
    "contour_coefficient",
    "contour_coefficients",
    "cot_poly",
    "csc_poly",
    "dedekind_cotangent_sum",
    "enumerate_poles",
    "finite_diff_check",
    "fukuhara_instance",
    "get_identity_engine",
    "limit_check",
    "multiplicity_d",
    "phi",
    "phi_at_rational",
    "phi_series",
    "r2_identity",
    "r2_reciprocity",
    "residue_subsets",
    "sample_family",
    "sgn",
    "sgn2",
    "shift_test",
    "zagier_reciprocity",
]
