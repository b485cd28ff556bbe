"""Exact and high-precision evaluation of the closed-form catalog."""

from .formulas import (
    CatalogMiss,
    chi_catalog,
    gamma_half_exact,
    master_chi,
    master_chi_coefficients,
    milz_strunz_volume,
    p_2qubits,
    p_2quaterbits,
    p_2rebits,
    u_closed,
    volume_hs,
    volume_lebesgue,
)
from .primes import factor_int, factorize, is_prime
from .reported import ReportedVolume, reported_value_audit
from .values import (
    FactorizedPiRational,
    PiRational,
    PrimeFactorization,
    RadicalPiRational,
    square_free_split,
)

__all__ = [
    "CatalogMiss",
    "FactorizedPiRational",
    "PiRational",
    "PrimeFactorization",
    "RadicalPiRational",
    "ReportedVolume",
    "chi_catalog",
    "factor_int",
    "factorize",
    "gamma_half_exact",
    "is_prime",
    "master_chi",
    "master_chi_coefficients",
    "milz_strunz_volume",
    "p_2qubits",
    "p_2quaterbits",
    "p_2rebits",
    "reported_value_audit",
    "square_free_split",
    "u_closed",
    "volume_hs",
    "volume_lebesgue",
]
