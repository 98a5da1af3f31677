"""Spherical functions on rank-one symmetric spaces and complex groups of type A,
with numerical slow-decrease certificates for mean value operators."""
from .certifier import CertifyConfig, certify_slow_decrease, certify_space, growth_type_check, sup_on_disk
from .complexgrp import ComplexGroupPoint, a1_point, phi_complex, regular_limit, weyl_denominator
from .errors import (
    ConvergenceError,
    DegenerateConfigurationError,
    DomainError,
    PoleError,
    RangeError,
    ResonanceError,
    SearchExhausted,
    SphericalError,
    TruncationError,
)
from .euclid import ExpPolyDistribution, deltafcn_constant_A, ft_exp_poly, verify_delta_bound
from .hcseries import c_function, eta_conditions, find_M, gamma_coeffs, lower_bound_check, phi_hc
from .oracle import QuadratureSpec, integral_calI, integral_I
from .rankone import build_bessel_series, calI_recurrence, I_even_series, I_odd, koornwinder_phi
from .rootdata import NAMED_SPACES, RankOneSpace, space_from_name, weyl_group_A

__version__ = "0.1.0"
