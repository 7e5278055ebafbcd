"""Exact spectral computations for lamplighter-type wreath products U wr Z."""
from .cyclotomic import CyclotomicNumber, lambda_exact
from .errors import (
    BudgetExceeded,
    FactorizationBudgetExceeded,
    InternalError,
    InvalidInput,
    LamplighterError,
    NeedsMoreDigits,
)
from .exact import Ball, ContinuedFractionReport, LaurentPoly, cf_expand, format_rational, parse_rational
from .groupring import DirectProduct, FiniteAbelianGroup, GroupRingElement, WreathProduct
from .numtheory import a_of_n, euler_phi, factorize, is_prime
from .products import KappaParams, KappaReport, dim_ker_TS, kappa_eval, rationality_probe
from .projections import rational_projection
from .series import BivariateSeries, gap_witness, phi_series
from .spectral import make_setup, run_checks, spectral_measure

__version__ = "0.1.0"

__all__ = [
    "Ball", "BivariateSeries", "BudgetExceeded", "ContinuedFractionReport", "CyclotomicNumber",
    "DirectProduct", "FactorizationBudgetExceeded", "FiniteAbelianGroup", "GroupRingElement",
    "InternalError", "InvalidInput", "KappaParams", "KappaReport", "LamplighterError",
    "LaurentPoly", "NeedsMoreDigits", "WreathProduct", "a_of_n", "cf_expand", "dim_ker_TS",
    "euler_phi", "factorize", "format_rational", "gap_witness", "is_prime", "kappa_eval",
    "lambda_exact", "make_setup", "parse_rational", "phi_series", "rational_projection",
    "rationality_probe", "run_checks", "spectral_measure",
]
