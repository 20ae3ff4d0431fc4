"""Exact q-series toolkit for partition ranks, cranks and Rank-Crank-type PDEs."""
from __future__ import annotations

from .checks import Check, VerificationError
from .coeff import Jet, LaurentPoly, NonUnitError, RationalFunction, exp_jet
from .qkernel import QSeries, bracket, eisenstein_G, euler, phi

__all__ = [
    "Check",
    "VerificationError",
    "Jet",
    "LaurentPoly",
    "NonUnitError",
    "RationalFunction",
    "exp_jet",
    "QSeries",
    "bracket",
    "eisenstein_G",
    "euler",
    "phi",
]

__version__ = "0.1.0"
