"""Exact Kazhdan-Lusztig combinatorics for tilting multiplicities on flag varieties."""

from .coxeter import CartanType, CoxeterSystem, Element, get_system
from .hecke import HeckeAlgebra, HeckeElement, bar_delta, bar_invariance_check, kl_poly, r_poly
from .kltables import KLTable, TableStore, default_table, dual_table, load
from .laurent import LaurentPoly
from .multiplicity import (
    jh_poly,
    jh_poly_r,
    richardson_poincare,
    ungraded_mult,
    verify_suite,
)

__all__ = [
    "CartanType",
    "CoxeterSystem",
    "Element",
    "HeckeAlgebra",
    "HeckeElement",
    "KLTable",
    "LaurentPoly",
    "TableStore",
    "bar_delta",
    "bar_invariance_check",
    "default_table",
    "dual_table",
    "get_system",
    "jh_poly",
    "jh_poly_r",
    "kl_poly",
    "load",
    "r_poly",
    "richardson_poincare",
    "ungraded_mult",
    "verify_suite",
]
