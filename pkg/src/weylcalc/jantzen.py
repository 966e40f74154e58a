"""The Jantzen sum formula.

For a dominant weight ``lam``, a multiple ``m alpha`` of a positive root is
*relevant* when ``0 < m p < <lam + rho, alpha^vee>``, and a *contributor* when
furthermore ``chi(lam - m p alpha)`` is nonzero.  The Jantzen sum is

    J(lam) = - sum over contributors of v_p(m p) * chi(lam - m p alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

from .cartan import E6, CartanData, RootVector, Weight, format_weight, pairing, root_as_weight
from .scalars import Generic, PrimeMode, PrimeScalar, compare, vp
from .weyl import Word, dominantize


class RegimeError(ValueError):
    """A generic-mode weight has a root multiple with ``m >= 2`` in range."""


class InvariantViolation(AssertionError):
    """A singular weight without an orthogonal root; cannot happen for valid data."""


class CharCombo(Mapping[Weight, int]):
    """Finite integer combination of Weyl characters ``chi(mu)``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Weight, int], Iterable[tuple[Weight, int]], None] = None):
        acc: dict[Weight, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for mu, c in items:
            acc[mu] = acc.get(mu, 0) + int(c)
        self._terms = {mu: c for mu, c in sorted(acc.items(), key=lambda t: t[0].key) if c}

    @classmethod
    def chi(cls, mu: Weight, coeff: int = 1) -> "CharCombo":
        return cls({mu: coeff})

    def __getitem__(self, mu: Weight) -> int:
        return self._terms[mu]

    def __iter__(self) -> Iterator[Weight]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, CharCombo):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "CharCombo") -> "CharCombo":
        return CharCombo(list(self.items()) + list(other.items()))

    def __neg__(self) -> "CharCombo":
        return CharCombo({mu: -c for mu, c in self.items()})

    def __sub__(self, other: "CharCombo") -> "CharCombo":
        return self + (-other)

    def __mul__(self, k: int) -> "CharCombo":
        return CharCombo({mu: k * c for mu, c in self.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self._terms)

    def at(self, p: int) -> "CharCombo":
        """Substitute ``p`` into every weight."""
        return CharCombo([(mu.at(p), c) for mu, c in self.items()])

    def to_json(self) -> list:
        return [{"weight": mu.to_json(), "coeff": c} for mu, c in self.items()]

    @classmethod
    def from_json(cls, obj) -> "CharCombo":
        return cls([(Weight.from_json(t["weight"]), t["coeff"]) for t in obj])

    def format(self, style: str = "text") -> str:
        if not self._terms:
            return "0"
        name = "\\chi" if style == "latex" else "χ"
        out = []
        for mu, c in self.items():
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            out.append(f"{sign} {mag}{name}({format_weight(mu, style)})")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"CharCombo({self.format()})"


@dataclass(frozen=True)
class RelevantMultiple:
    root: RootVector  # m == 1
    m: int
    pairing_value: PrimeScalar
    vp_weight: int

    @property
    def multiple(self) -> RootVector:
        return self.root.times(self.m)


@dataclass(frozen=True)
class Contribution:
    multiple: RelevantMultiple
    mu: Weight  # lam + rho - m p alpha
    sign: int
    mu_prime: Weight
    word: Word

    kind = "contributor"

    @property
    def value(self) -> CharCombo:
        """``v_p(mp) * sign(w) * chi(mu')`` as printed in the tables."""
        return CharCombo.chi(self.mu_prime, self.multiple.vp_weight * self.sign)


@dataclass(frozen=True)
class NonContributor:
    multiple: RelevantMultiple
    mu: Weight
    witness: RootVector

    kind = "noncontributor"


Classification = Union[Contribution, NonContributor]


def _check_dominant(lam: Weight, mode: PrimeMode, data: CartanData) -> Weight:
    if len(lam) != data.rank:
        raise ValueError(f"weight {lam} has the wrong rank for {data.name or 'this root system'}")
    lam = lam.normalize(mode)
    if not lam.is_dominant(mode):
        raise ValueError(f"weight {lam} is not dominant")
    return lam


def relevant_multiples(lam: Weight, mode: PrimeMode = Generic(), data: CartanData = E6) -> list[RelevantMultiple]:
    lam = _check_dominant(lam, mode, data)
    shifted = lam + data.rho
    p = mode.prime
    out = []
    for alpha in data.positive_roots:
        s = mode.normalize(pairing(shifted, alpha, data))
        if isinstance(mode, Generic):
            if compare(s, 2 * p, mode) >= 0:
                raise RegimeError(f"<{lam}+rho, {alpha}^vee> = {s} is not below 2p for {mode}")
            if compare(s, p, mode) > 0:
                out.append(RelevantMultiple(alpha, 1, s, 1))
            continue
        m = 1
        while compare(p * m, s, mode) < 0:
            out.append(RelevantMultiple(alpha, m, s, vp(m * mode.p, mode.p)))
            m += 1
    return out


def shifted_reflection(lam: Weight, multiple: RelevantMultiple, mode: PrimeMode, data: CartanData = E6) -> Weight:
    """``lam + rho - m p alpha`` in fundamental-weight coordinates."""
    mp = mode.prime * multiple.m
    return (lam + data.rho - root_as_weight(multiple.root, data) * mp).normalize(mode)


def orthogonal_root(mu: Weight, mode: PrimeMode, data: CartanData = E6) -> Optional[RootVector]:
    """First positive root (lexicographic) whose coroot pairs to zero with ``mu``."""
    for beta in data.positive_roots:
        if compare(pairing(mu, beta, data), 0, mode) == 0:
            return beta
    return None


def classify(lam: Weight, multiple: RelevantMultiple, mode: PrimeMode = Generic(), data: CartanData = E6) -> Classification:
    lam = lam.normalize(mode)
    mu = shifted_reflection(lam, multiple, mode, data)
    res = dominantize(mu, mode, data)
    if not res.singular:
        return Contribution(multiple, mu, res.sign, res.dominant - data.rho, res.word)
    beta = orthogonal_root(mu, mode, data)
    if beta is None:
        raise InvariantViolation(f"{mu} is singular but no positive root is orthogonal to it")
    return NonContributor(multiple, mu, beta)


def analyze(lam: Weight, mode: PrimeMode = Generic(), data: CartanData = E6) -> list[Classification]:
    lam = _check_dominant(lam, mode, data)
    return [classify(lam, rm, mode, data) for rm in relevant_multiples(lam, mode, data)]


def sum_of(rows: Iterable[Classification]) -> CharCombo:
    total = CharCombo()
    for row in rows:
        if isinstance(row, Contribution):
            total = total - row.value
    return total


def jantzen_sum(lam: Weight, mode: PrimeMode = Generic(), data: CartanData = E6) -> CharCombo:
    """``J(lam)`` in the basis of Weyl characters."""
    return sum_of(analyze(lam, mode, data))


def report(lam: Weight, mode: PrimeMode = Generic(), data: CartanData = E6) -> dict:
    """JSON-ready record of every relevant multiple and the resulting sum."""
    lam = _check_dominant(lam, mode, data)
    rows = analyze(lam, mode, data)
    out_rows = []
    for row in rows:
        rm = row.multiple
        rec = {
            "root": list(rm.root.coeffs),
            "m": rm.m,
            "vp": rm.vp_weight,
            "kind": row.kind,
            "mu": row.mu.to_json(),
        }
        if isinstance(row, NonContributor):
            rec["beta"] = list(row.witness.coeffs)
        else:
            rec["word"] = list(row.word)
            rec["sign"] = row.sign
            rec["mu_prime"] = row.mu_prime.to_json()
        out_rows.append(rec)
    return {
        "lambda": lam.to_json(),
        "mode": mode.to_json(),
        "rows": out_rows,
        "jantzen_sum": sum_of(rows).to_json(),
    }
