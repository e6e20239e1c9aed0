"""Hausdorff dimension of continued-fraction Cantor sets.

Thin Python layer over the C++ core.  Exact coefficients come back as
``fractions.Fraction``; sweep reports as plain dictionaries.
"""

import json
from fractions import Fraction

from ._cfdim import (
    DivergentSumError,
    DomainError,
    NumericalError,
    ParseError,
    c_ii1,
    dimension,
    good_estimate,
    pressure,
    qterms,
)
from . import _cfdim

__all__ = [
    "DivergentSumError",
    "DomainError",
    "NumericalError",
    "ParseError",
    "c_ii1",
    "dimension",
    "good_estimate",
    "hensley_coefficients",
    "loglog_coefficients",
    "pressure",
    "qterms",
    "tree_coefficients",
    "verify",
]


def tree_coefficients(j_max):
    """a_0 .. a_{j_max} of F = exp(x F)."""
    return [Fraction(a) for a in _cfdim.tree_coefficients(j_max)]


def loglog_coefficients(k_max):
    """{(k, l): c_kl} for alpha = log(1 - u - v alpha)."""
    return {kl: Fraction(c) for kl, c in _cfdim.loglog_coefficients(k_max).items()}


def hensley_coefficients(order=3, c20=None, m=64):
    """{(i, j): c_ij} of delta(leq:N) = 1 + sum c_ij log^j N / N^i."""
    if c20 is None:
        c20 = qterms(m)["c20"] if order >= 2 else 0.0
    return dict(_cfdim.hensley_coefficients(order, c20))


def verify(family, from_=0, to=0, step=0, order=3, grid=0, jobs=1):
    """Runs a verification sweep and returns the report as a dict."""
    return json.loads(_cfdim.verify_json(family, from_, to, step, order, grid, jobs))
