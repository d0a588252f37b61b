"""Exact computation of Laguerre-type polynomial chains attached to
indecomposable sl(2) representations.

Everything is rational: scalars are :class:`fractions.Fraction`, polynomials
are :class:`QPoly`, and every identity is checked by exact equality.
"""

from .diag import DiagChainFamily
from .exact import Q, as_q, format_q, moment, pochhammer
from .jordan import JordanChainFamily
from .qpoly import QPoly, RootReport, isolate_real_roots, laguerre, sturm_sequence
from .report import Check, Report
from .series import TSeries
from .symstate import OpName, SymExpr

__all__ = [
    "Check",
    "DiagChainFamily",
    "JordanChainFamily",
    "OpName",
    "Q",
    "QPoly",
    "Report",
    "RootReport",
    "SymExpr",
    "TSeries",
    "as_q",
    "format_q",
    "isolate_real_roots",
    "laguerre",
    "moment",
    "pochhammer",
    "sturm_sequence",
]

__version__ = "0.1.0"
