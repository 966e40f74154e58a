"""Exact Jantzen-sum computations and Weyl module structure for E6 and other finite root systems."""

from .cartan import E6, CartanData, RootVector, Weight, format_weight, pairing, positive_roots, preset
from .jantzen import CharCombo, analyze, jantzen_sum, relevant_multiples
from .scalars import Concrete, Generic, Indeterminate, P, PrimeScalar
from .structure import deduce, theorem_suite
from .weyl import apply_word, chi, dominantize, reflect, weyl_dimension

__version__ = "0.1.0"

__all__ = [
    "E6", "CartanData", "RootVector", "Weight", "format_weight", "pairing", "positive_roots", "preset",
    "CharCombo", "analyze", "jantzen_sum", "relevant_multiples",
    "Concrete", "Generic", "Indeterminate", "P", "PrimeScalar",
    "deduce", "theorem_suite",
    "apply_word", "chi", "dominantize", "reflect", "weyl_dimension",
]
