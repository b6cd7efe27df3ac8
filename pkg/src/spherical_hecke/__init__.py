"""Exact computations in the spherical Hecke algebra of a split group over a
local function field: the Satake basis, Lusztig-Kato polynomials, Whittaker
and spherical functions, and brute-force p-adic checks of the identities
relating them."""
__version__ = "0.1.0"

from .exactalg import Cyclotomic, LaurentScalar, QValue, TruncatedSeries, VirtualCharacter
from .rootdata import RootSystem, build_root_system, dominance_leq, pairing
from .hecke import HeckeElement, SatakeParameter, satake_H

__all__ = [
    "Cyclotomic",
    "LaurentScalar",
    "QValue",
    "TruncatedSeries",
    "VirtualCharacter",
    "RootSystem",
    "build_root_system",
    "dominance_leq",
    "pairing",
    "HeckeElement",
    "SatakeParameter",
    "satake_H",
]
