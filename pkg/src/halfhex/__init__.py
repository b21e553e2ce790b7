"""Exact correlation functions for Novak half-hexagon lozenge tilings."""
from .binomial_matrix import (
    BinomialMatrixSpec,
    ExactMatrix,
    bareiss_det,
    build_M,
    closed_form_inverse,
    cofactor_P,
    det_binomial_L,
    lagrange_identity_sides,
)
from .ensemble import (
    Configuration,
    EnsembleSpec,
    SpaceTimePoint,
    count_lgv,
    empirical_correlation,
    enumerate_configurations,
    phi,
    sample,
)
from .errors import CapExceeded, InvalidInput
from .kernel import (
    CorrelationQuery,
    KernelContext,
    correlation,
    em_kernel,
    general_kernel,
    halfhex_kernel,
)
from .render import render

__version__ = "0.1.0"
