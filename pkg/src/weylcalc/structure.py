"""Submodule structure of Weyl modules by iterating the Jantzen sum formula.

Starting from ``lam0`` the sum formula is applied to ``lam0`` and then to each
contributing weight, up to ``depth_limit`` rounds.  The discovered weights are
then settled from the bottom up by three rules:

R0  ``J(mu) = 0``: ``V(mu)`` is simple and ``Ch L(mu) = chi(mu)``.
R1  ``J(mu) = Ch L(nu)`` for a settled ``nu``: ``rad V(mu) = L(nu)``.
R2  ``J(mu) = chi(nu)`` where ``V(nu)`` has exactly two composition factors:
    the radical of ``V(mu)`` has the character of ``V(nu)``.

Anything else is left undetermined.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import lcm
from typing import Optional, Union

from .cartan import E6, CartanData, Weight, format_weight
from .jantzen import CharCombo, jantzen_sum, relevant_multiples
from .scalars import Concrete, Generic, PrimeMode, PrimeScalar, compare
from .weyl import weyl_dimension


@dataclass(frozen=True)
class Simple:
    kind = "simple"

    def to_json(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class RadicalSimple:
    nu: Weight
    kind = "radical_simple"

    def to_json(self):
        return {"kind": self.kind, "nu": self.nu.to_json()}


@dataclass(frozen=True)
class RadicalIsWeyl:
    nu: Weight
    kind = "radical_is_weyl"

    def to_json(self):
        return {"kind": self.kind, "nu": self.nu.to_json()}


@dataclass(frozen=True)
class Undetermined:
    J: Optional[CharCombo]
    kind = "undetermined"

    def to_json(self):
        return {"kind": self.kind, "J": None if self.J is None else self.J.to_json()}


Verdict = Union[Simple, RadicalSimple, RadicalIsWeyl, Undetermined]


@dataclass
class Link:
    weight: Weight
    level: int
    J: Optional[CharCombo]
    verdict: Verdict
    rule: Optional[str] = None
    simple_char: Optional[CharCombo] = None
    factors: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    @property
    def determined(self) -> bool:
        return self.simple_char is not None

    def to_json(self) -> dict:
        return {
            "weight": self.weight.to_json(),
            "level": self.level,
            "J": None if self.J is None else self.J.to_json(),
            "verdict": self.verdict.to_json(),
            "rule": self.rule,
            "simple_char": None if self.simple_char is None else self.simple_char.to_json(),
            "composition_factors": self.factors,
            "notes": list(self.notes),
        }


@dataclass
class StructureReport:
    lam: Weight
    mode: PrimeMode
    depth_limit: int
    links: list[Link]
    chain: list[Link]
    complete: bool

    @property
    def link(self) -> Link:
        return self.chain[-1]

    @property
    def verdict(self) -> Verdict:
        return self.link.verdict

    @property
    def simple_char(self) -> Optional[CharCombo]:
        return self.link.simple_char

    def chain_weights(self) -> list[Weight]:
        return [l.weight for l in self.chain]

    def exact_sequence(self) -> list[str]:
        """Terms of the sequence, e.g. ``["0", "V(ω6)", "V(2ω1)", "L(2ω1)", "0"]``."""
        return self._terms("text")

    def _terms(self, style: str) -> list[str]:
        fw = lambda w: format_weight(w, style)
        terms = ["0"] + [f"V({fw(w)})" for w in self.chain_weights()] + [f"L({fw(self.lam)})", "0"]
        return terms

    def render(self, style: str = "text") -> str:
        fw = lambda w: format_weight(w, style)
        if isinstance(self.verdict, Simple):
            return f"V({fw(self.lam)}) is simple"
        if not self.complete:
            return f"V({fw(self.lam)}): undetermined at depth {self.depth_limit}"
        arrow = "\\to " if style == "latex" else " → "
        return arrow.join(self._terms(style))

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "mode": self.mode.to_json(),
            "depth_limit": self.depth_limit,
            "verdict": self.verdict.to_json(),
            "complete": self.complete,
            "simple_char": None if self.simple_char is None else self.simple_char.to_json(),
            "chain": [l.weight.to_json() for l in self.chain],
            "exact_sequence": self.exact_sequence() if self.complete and not isinstance(self.verdict, Simple) else [],
            "links": [l.to_json() for l in self.links],
        }


class DeductionCache:
    """Jantzen sums and settled links per ``(weight, mode, root system)``; thread safe."""

    def __init__(self):
        self._lock = threading.Lock()
        self._sums: dict = {}
        self._settled: dict = {}

    def jantzen(self, mu: Weight, mode: PrimeMode, data: CartanData) -> CharCombo:
        key = (mu, mode, data.cartan)
        with self._lock:
            hit = self._sums.get(key)
        if hit is None:
            hit = jantzen_sum(mu, mode, data)
            with self._lock:
                self._sums.setdefault(key, hit)
        return hit

    def settled(self, mu: Weight, mode: PrimeMode, data: CartanData) -> Optional[Link]:
        with self._lock:
            return self._settled.get((mu, mode, data.cartan))

    def settle(self, link: Link, mode: PrimeMode, data: CartanData) -> None:
        if link.determined:
            with self._lock:
                self._settled.setdefault((link.weight, mode, data.cartan), link)


def _height_functional(data: CartanData) -> tuple[list[int], int]:
    """Integer ``h`` and ``den`` with ``height(x) = sum(h_i x_i) / den`` on the root lattice."""
    n = data.rank
    a = [[Fraction(data.cartan[i][j]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        f = a[c][c]
        a[c] = [x / f for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                g = a[r][c]
                a[r] = [x - g * y for x, y in zip(a[r], a[c])]
    inv = [row[n:] for row in a]
    h = [sum(inv[j][i] for j in range(n)) for i in range(n)]
    den = lcm(*(x.denominator for x in h))
    return [int(x * den) for x in h], den


def _ordering(lam0: Weight, weights: list[Weight], mode: PrimeMode, data: CartanData) -> list[Weight]:
    h, _ = _height_functional(data)

    def depth(mu: Weight) -> PrimeScalar:
        diff = lam0 - mu
        return sum((x * hi for x, hi in zip(diff.coords, h)), PrimeScalar())

    def cmp(x: Weight, y: Weight) -> int:
        c = compare(depth(y), depth(x), mode)
        if c:
            return c
        return (x.key > y.key) - (x.key < y.key)

    return sorted(weights, key=cmp_to_key(cmp))


def deduce(
    lam0: Weight,
    mode: PrimeMode = Generic(),
    depth_limit: int = 2,
    data: CartanData = E6,
    cache: Optional[DeductionCache] = None,
) -> StructureReport:
    if depth_limit < 1:
        raise ValueError("depth_limit must be at least 1")
    cache = cache or DeductionCache()
    lam0 = lam0.normalize(mode)
    if not lam0.is_dominant(mode):
        raise ValueError(f"weight {lam0} is not dominant")

    levels = {lam0: 0}
    sums: dict[Weight, CharCombo] = {}
    frontier = [lam0]
    for level in range(depth_limit):
        nxt = []
        for mu in frontier:
            sums[mu] = cache.jantzen(mu, mode, data)
            for nu in sums[mu]:
                if nu not in levels:
                    levels[nu] = level + 1
                    nxt.append(nu)
        frontier = nxt

    links: dict[Weight, Link] = {}
    for mu in _ordering(lam0, list(levels), mode, data):
        link = _settle(mu, levels[mu], sums.get(mu), links, mode, data, cache)
        links[mu] = link
        cache.settle(link, mode, data)

    chain = [links[lam0]]
    complete = True
    while True:
        v = chain[-1].verdict
        if isinstance(v, (RadicalSimple, RadicalIsWeyl)):
            chain.append(links[v.nu])
            if isinstance(v, RadicalIsWeyl):
                break
        elif isinstance(v, Simple):
            break
        else:
            complete = False
            break
    chain.reverse()
    return StructureReport(lam0, mode, depth_limit, list(links.values()), chain, complete)


def _settle(mu, level, J, settled: dict, mode, data, cache) -> Link:
    prior = cache.settled(mu, mode, data)
    if J is None:
        if prior is not None:
            return Link(mu, level, prior.J, prior.verdict, prior.rule, prior.simple_char, prior.factors,
                        prior.notes + ["reused from an earlier deduction"])
        return Link(mu, level, None, Undetermined(None))
    chi_mu = CharCombo.chi(mu)
    if not J:
        return Link(mu, level, J, Simple(), "R0", chi_mu, 1)
    for nu, other in settled.items():
        if other.determined and other.simple_char == J:
            notes = []
            if isinstance(other.verdict, Simple):
                notes.append(f"rad V({format_weight(mu)}) ≅ L({format_weight(nu)}) = V({format_weight(nu)})")
            return Link(mu, level, J, RadicalSimple(nu), "R1", chi_mu - other.simple_char, 2, notes)
    if len(J) == 1:
        (nu, c), = J.items()
        other = settled.get(nu)
        if c == 1 and other is not None and isinstance(other.verdict, RadicalSimple):
            assert other.factors == 2, "R2 needs a module with exactly two composition factors"
            notes = [f"Ch rad V({format_weight(mu)}) = Ch V({format_weight(nu)}); "
                     "the isomorphism with V(nu) is not proved by characters alone"]
            return Link(mu, level, J, RadicalIsWeyl(nu), "R2", chi_mu - J, 1 + other.factors, notes)
    return Link(mu, level, J, Undetermined(J))


def simple_dimension(char: CharCombo, data: CartanData = E6) -> int:
    """Dimension of a p-free character written in the Weyl-character basis."""
    return sum(c * weyl_dimension(mu, data) for mu, c in char.items())


# --- the main theorem, as data --------------------------------------------


def _w(*entries) -> Weight:
    return Weight(tuple(PrimeScalar(*e) if isinstance(e, tuple) else e for e in entries))


def _pk(k: int):
    return (1, -k)


SIMPLE = "simple"

# (label, r as (a, b) meaning a*p+b, primes or "generic", expected)
# expected: SIMPLE or the chain of weights from the bottom term up to lam0.
THEOREM = [
    ("b(i)", (1, -3), [3], SIMPLE),
    ("b(ii)", (1, -3), [5], [_w(0, 0, 0, 0, 0, 1), _w(2, 0, 0, 0, 0, 0)]),
    ("b(iii)", (1, -3), [7], [_w(1, 0, 0, 1, 0, 0), _w(2, 0, 0, 0, 0, 1), _w(4, 0, 0, 0, 0, 0)]),
    ("b(iv)", (1, -3), ["generic", 11, 13], [
        _w(_pk(9), 0, 0, 0, 0, 0),
        _w(_pk(8), 0, 0, 0, 0, 1),
        _w(_pk(8), 1, 0, 0, 0, 0),
        _w(_pk(6), 0, 0, 1, 0, 0),
        _w(_pk(5), 0, 0, 0, 0, 1),
        _w(_pk(3), 0, 0, 0, 0, 0),
    ]),
    ("c(i)", (1, -2), [2, 3], SIMPLE),
    ("c(ii)", (1, -2), [5], [_w(0, 0, 0, 0, 0, 0), _w(3, 0, 0, 0, 0, 0)]),
    ("c(iii)", (1, -2), [7], [_w(0, 0, 0, 1, 0, 1), _w(1, 0, 0, 0, 0, 2), _w(5, 0, 0, 0, 0, 0)]),
    ("c(iv)", (1, -2), ["generic", 11, 13], [
        _w(_pk(10), 1, 0, 0, 0, 0),
        _w(_pk(9), 0, 0, 0, 1, 0),
        _w(_pk(8), 0, 1, 0, 0, 0),
        _w(_pk(7), 0, 0, 1, 0, 1),
        _w(_pk(6), 0, 0, 0, 0, 2),
        _w(_pk(2), 0, 0, 0, 0, 0),
    ]),
    ("d(i)", (1, -1), [2, 3, 5], SIMPLE),
    ("d(ii)", (1, -1), [7], [_w(0, 0, 0, 0, 0, 3), _w(6, 0, 0, 0, 0, 0)]),
    ("d(iii)", (1, -1), ["generic", 11, 13], [
        _w(_pk(11), 2, 0, 0, 0, 0),
        _w(_pk(10), 1, 0, 0, 1, 0),
        _w(_pk(9), 0, 1, 0, 0, 1),
        _w(_pk(8), 0, 0, 1, 0, 2),
        _w(_pk(7), 0, 0, 0, 0, 3),
        _w(_pk(1), 0, 0, 0, 0, 0),
    ]),
]

ALL_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class CaseResult:
    label: str
    mode: PrimeMode
    lam: Weight
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.label} [{self.mode}] {format_weight(self.lam)} {self.detail}".rstrip()


def shape_ok(report: StructureReport) -> bool:
    """First term simple, every middle term with exactly two composition factors."""
    if not report.complete:
        return False
    if isinstance(report.verdict, Simple):
        return True
    first, *middle = report.chain
    return first.factors == 1 and all(l.factors == 2 and l.rule == "R1" for l in middle)


def _case_modes(primes, modes: Optional[set]) -> list[PrimeMode]:
    out = []
    for q in primes:
        m = Generic() if q == "generic" else Concrete(q)
        if modes is None or m in modes:
            out.append(m)
    return out


def theorem_suite(modes: Optional[list] = None, depth_limit: int = 2) -> list[CaseResult]:
    """Check every part of the structure theorem for ``r*omega_1``, ``0 <= r <= p-1``."""
    wanted = None if modes is None else set(modes)
    cache = DeductionCache()
    out: list[CaseResult] = []
    omega1 = lambda r: _w(r, 0, 0, 0, 0, 0)

    # (a): r <= p-4 is simple
    for q in (5, 7, 11, 13):
        mode = Concrete(q)
        if wanted is not None and mode not in wanted:
            continue
        for r in range(0, q - 3):
            rep = deduce(omega1(r), mode, depth_limit, cache=cache)
            out.append(CaseResult("a", mode, omega1(r), isinstance(rep.verdict, Simple) and shape_ok(rep)))
        for r in range(0, max(q - 10, 0)):
            empty = not relevant_multiples(omega1(r), mode)
            out.append(CaseResult("a:vacuous", mode, omega1(r), empty, "no relevant multiples"))
    if wanted is None or Generic() in wanted:
        g = Generic()
        for k in range(4, 12):
            lam = _w(_pk(k), 0, 0, 0, 0, 0)
            rep = deduce(lam, g, depth_limit, cache=cache)
            ok = isinstance(rep.verdict, Simple)
            if k == 11:
                ok = ok and not relevant_multiples(lam, g)
            out.append(CaseResult("a" if k <= 10 else "a:vacuous", g, lam, ok))

    for label, (a, b), primes, expected in THEOREM:
        for mode in _case_modes(primes, wanted):
            r = PrimeScalar(a, b)
            lam = _w(r, 0, 0, 0, 0, 0).normalize(mode)
            rep = deduce(lam, mode, depth_limit, cache=cache)
            if expected == SIMPLE:
                ok = isinstance(rep.verdict, Simple)
                detail = "simple" if ok else f"got {rep.render()}"
            else:
                want = [w.normalize(mode) for w in expected]
                ok = rep.complete and rep.chain_weights() == want
                detail = rep.render() if ok else f"expected {[format_weight(w) for w in want]}, got {rep.render()}"
            out.append(CaseResult(label, mode, lam, ok, detail))
            out.append(CaseResult("e", mode, lam, shape_ok(rep), "sequence shape"))
    return out
