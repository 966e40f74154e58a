"""Weyl group action on weights in fundamental-weight coordinates.

A word ``[i1, ..., ir]`` denotes the product ``s_i1 s_i2 ... s_ir``; applied
to a vector, the rightmost reflection acts first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cartan import E6, CartanData, Weight, pairing
from .scalars import Generic, PrimeMode, compare, is_nonnegative

Word = tuple[int, ...]


def check_word(word: Sequence[int], data: CartanData = E6) -> Word:
    word = tuple(int(i) for i in word)
    for i in word:
        if not 1 <= i <= data.rank:
            raise ValueError(f"reflection index {i} out of range 1..{data.rank}")
    return word


def reflect(mu: Weight, i: int, data: CartanData = E6) -> Weight:
    """``s_i(mu) = mu - <mu, alpha_i^vee> alpha_i``."""
    if not 1 <= i <= data.rank:
        raise ValueError(f"reflection index {i} out of range 1..{data.rank}")
    k = mu.coords[i - 1]
    return Weight(tuple(x - k * data.cartan[r][i - 1] for r, x in enumerate(mu.coords)))


def apply_word(word: Sequence[int], mu: Weight, data: CartanData = E6) -> Weight:
    for i in reversed(check_word(word, data)):
        mu = reflect(mu, i, data)
    return mu


def dot_reflect(mu: Weight, i: int, data: CartanData = E6) -> Weight:
    """``s_i . mu = s_i(mu + rho) - rho``."""
    rho = data.rho
    return reflect(mu + rho, i, data) - rho


@dataclass(frozen=True)
class DominantizationResult:
    dominant: Weight
    word: Word
    sign: int
    singular: bool


def dominantize(mu: Weight, mode: PrimeMode = Generic(), data: CartanData = E6, choose=None) -> DominantizationResult:
    """Move ``mu`` into the dominant chamber.

    Reflects at the least index with a negative coordinate until none is left.
    ``choose``, if given, picks the index from the list of negative ones instead.
    The returned word maps ``mu`` to the dominant weight.
    """
    word: list[int] = []
    while True:
        neg = [i for i, c in enumerate(mu.coords, start=1) if not is_nonnegative(c, mode)]
        if not neg:
            break
        i = neg[0] if choose is None else choose(neg)
        mu = reflect(mu, i, data)
        word.append(i)
    word.reverse()
    singular = any(compare(c, 0, mode) == 0 for c in mu.coords)
    return DominantizationResult(mu, tuple(word), -1 if len(word) % 2 else 1, singular)


def chi(mu: Weight, mode: PrimeMode = Generic(), data: CartanData = E6) -> Optional[tuple[int, Weight]]:
    """Weyl character ``chi(mu)`` as ``(sign, dominant weight)``, or ``None`` when it vanishes."""
    rho = data.rho
    res = dominantize(mu + rho, mode, data)
    if res.singular:
        return None
    return res.sign, res.dominant - rho


def weyl_dimension(lam: Weight, data: CartanData = E6) -> int:
    """Dimension of the Weyl module with highest weight ``lam`` (p-free, dominant)."""
    if not lam.is_constant:
        raise ValueError(f"dimension needs a p-free weight, got {lam}")
    if any(c.b < 0 for c in lam.coords):
        raise ValueError(f"weight {lam} is not dominant")
    shifted = lam + data.rho
    dim = Fraction(1)
    for alpha in data.positive_roots:
        dim *= Fraction(pairing(shifted, alpha, data).b, pairing(data.rho, alpha, data).b)
    assert dim.denominator == 1
    return int(dim)
