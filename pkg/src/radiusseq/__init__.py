"""Constructions, verification and experiments for n-ary k-radius sequences."""

from . import covers, kradius, logarithms, numtheory, sequences, tilings
from .covers import CoverPlan
from .logarithms import LogFn
from .sequences import RadiusSequence
from .tilings import TilingReport

__all__ = [
    "CoverPlan",
    "LogFn",
    "RadiusSequence",
    "TilingReport",
    "covers",
    "kradius",
    "logarithms",
    "numtheory",
    "sequences",
    "tilings",
]

__version__ = "0.1.0"
