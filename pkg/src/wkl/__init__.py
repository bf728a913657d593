"""Whittaker Kazhdan-Lusztig polynomials for finite Weyl groups."""

from .klcore import (
    KLTable,
    MultiplicityMatrix,
    compute_generalized_verma,
    compute_ordinary_kl,
    compute_whittaker_kl,
    multiplicities,
)
from .laurent import LaurentPoly
from .quotient import ParabolicQuotient, build_quotient, parse_theta
from .rootsys import CartanDatum, WeylGroup, build_root_system, enumerate_group, parse_cartan

__version__ = "0.1.0"

__all__ = [
    "CartanDatum",
    "KLTable",
    "LaurentPoly",
    "MultiplicityMatrix",
    "ParabolicQuotient",
    "WeylGroup",
    "build_quotient",
    "build_root_system",
    "compute_generalized_verma",
    "compute_ordinary_kl",
    "compute_whittaker_kl",
    "enumerate_group",
    "multiplicities",
    "parse_cartan",
    "parse_theta",
]
