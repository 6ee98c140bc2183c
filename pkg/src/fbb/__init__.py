"""
fbb -- computational free probability for the free Brownian bridge.

Free cumulants and transforms of the squared L2-norm, the Levy area and the
second signature component; density recovery from the boundary curve of K;
support edges by three independent methods; and a GUE random-matrix oracle.
"""

from .errors import ArityError, BracketError, DomainError, FBBError, NumericError, RangeError
from .laws import (Commutator, FreeConv, FreePoisson, Law, LevyArea, Scaled, Semicircle,
                   SquareNorm, TensorSignature, TruncatedLevyArea, TruncatedSquareNorm,
                   cauchy_eval, cumulant, k_eval, moment, r_eval)

__version__ = "0.1.0"

__all__ = [
    "ArityError", "BracketError", "DomainError", "FBBError", "NumericError", "RangeError",
    "Commutator", "FreeConv", "FreePoisson", "Law", "LevyArea", "Scaled", "Semicircle",
    "SquareNorm", "TensorSignature", "TruncatedLevyArea", "TruncatedSquareNorm",
    "cauchy_eval", "cumulant", "k_eval", "moment", "r_eval",
]
