"""
Exact computations with Hilbert Eisenstein series over real quadratic fields,
the Kronecker series F_tau(u, v), its substituted product
F_tau(T, -XYT) F_tau(XT, YT), and the period data read off from it.
"""

from .arithmetic import SUPPORTED_DISCRIMINANTS, UnsupportedDiscriminant, zeta_F_neg
from .kronecker import PolySeries, g_coefficient, kuznetsov_expansion, normalized_layer, product_layer
from .periods import (
    PeriodPolynomial,
    SymbolicConstant,
    UnsupportedCase,
    eisenstein_layer,
    extract_cusp,
    extract_eigenform,
    in_modular_span,
    p_minus,
    p_plus,
    rankin_cohen,
    rc_consistency,
)
from .qseries import FourierSeries, eisenstein, nu_twist
from .quadfield import FieldElement, NuIndex

__version__ = "0.1.0"

__all__ = [
    "SUPPORTED_DISCRIMINANTS",
    "UnsupportedDiscriminant",
    "UnsupportedCase",
    "zeta_F_neg",
    "FieldElement",
    "NuIndex",
    "FourierSeries",
    "eisenstein",
    "nu_twist",
    "PolySeries",
    "g_coefficient",
    "kuznetsov_expansion",
    "product_layer",
    "normalized_layer",
    "PeriodPolynomial",
    "SymbolicConstant",
    "p_plus",
    "p_minus",
    "eisenstein_layer",
    "extract_cusp",
    "extract_eigenform",
    "in_modular_span",
    "rankin_cohen",
    "rc_consistency",
]
