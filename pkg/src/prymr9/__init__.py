"""Exact verification of the numerical steps showing the genus-9 Prym moduli space is uniruled."""

from .divisor import (
    CurveClass,
    DivisorClass,
    PrymBasis,
    canonical_class,
    d9_class,
    pair,
    pullback_from_Mg,
)
from .errors import ComputationError, ContractError, InputError, PartialClassWarning, UnsupportedSymbolError

__version__ = "0.1.0"

__all__ = [
    "ComputationError",
    "ContractError",
    "CurveClass",
    "DivisorClass",
    "InputError",
    "PartialClassWarning",
    "PrymBasis",
    "UnsupportedSymbolError",
    "canonical_class",
    "d9_class",
    "pair",
    "pullback_from_Mg",
]
