"""Brute-force computations over ``F_p((pi))`` for ``GL_n``."""
from .fpoly import FpLaurent
from .matrix import (
    IwasawaData,
    SeriesMatrix,
    cartan_invariant,
    hermite_form,
    iwasawa,
    psi_exponent,
    psi_value,
)
from .enumerate import CosetEnumeration, Tally, default_bounds, hnf_count, hnf_enumerate, tally

__all__ = [
    "FpLaurent",
    "SeriesMatrix",
    "IwasawaData",
    "cartan_invariant",
    "hermite_form",
    "iwasawa",
    "psi_exponent",
    "psi_value",
    "CosetEnumeration",
    "Tally",
    "default_bounds",
    "hnf_count",
    "hnf_enumerate",
    "tally",
]
