"""Stability of morphisms between sums of line bundles on projective space.

Exact tools: King's criterion over finite fields, the reductive embedding
of (2,1) and (3,1) types, the constants k(i, j) and k(i), and evaluation
of the quotient-existence inequality systems.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .certificates import CertificateReport, certify
from .errors import (
    AllIrregular,
    BudgetExceeded,
    Degenerate,
    GateFailure,
    GitQuotError,
    MissingConstant,
    UnsupportedShape,
)
from .king import block_form_status, decide_semistable
from .morphisms import Morphism, MorphismType, Polarization

__all__ = [
    "__version__",
    "AllIrregular",
    "BudgetExceeded",
    "CertificateReport",
    "Degenerate",
    "GateFailure",
    "GitQuotError",
    "MissingConstant",
    "Morphism",
    "MorphismType",
    "Polarization",
    "UnsupportedShape",
    "block_form_status",
    "certify",
    "decide_semistable",
]
