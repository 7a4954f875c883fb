"""Exact lattice-polytope computations behind the Gorenstein property of K[I_{n,d,t}].

The geometric route enumerates lattice points of dilations of the generator
polytope and tests integrality of a polar dual; the closed-form route checks
membership of ``n`` in a short list. Both run on exact rationals.
"""

from .gorenstein import (
    Branch,
    GorensteinReport,
    a_invariant,
    cross_check,
    decide_algorithmic,
    decide_closed_form,
    expected_delta,
)
from .tspread import InvalidSpreadParams, Monomial, SpreadParams, UnsupportedSpreadError

__all__ = [
    "Branch",
    "GorensteinReport",
    "InvalidSpreadParams",
    "Monomial",
    "SpreadParams",
    "UnsupportedSpreadError",
    "a_invariant",
    "cross_check",
    "decide_algorithmic",
    "decide_closed_form",
    "expected_delta",
]
