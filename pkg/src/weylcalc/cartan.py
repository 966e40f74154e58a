"""Cartan data, positive roots, weights and pairings.

Conventions: simple roots and fundamental weights are indexed ``1..rank`` in
the public API.  The Cartan matrix entry ``c(i, j)`` is ``<alpha_j, alpha_i^vee>``,
so column ``j`` holds the fundamental-weight coordinates of ``alpha_j``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Iterator, Sequence

from .scalars import PrimeScalar, PrimeMode, ScalarLike, compare, is_nonnegative, UnsupportedMode


class CartanError(ValueError):
    """Invalid or unsupported Cartan data."""


@dataclass(frozen=True)
class Weight:
    """A weight in fundamental-weight coordinates."""

    coords: tuple[PrimeScalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(PrimeScalar.coerce(c) for c in self.coords))

    @classmethod
    def of(cls, *xs: ScalarLike) -> "Weight":
        return cls(tuple(xs))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def fundamental(cls, i: int, rank: int) -> "Weight":
        return cls(tuple(int(j == i) for j in range(1, rank + 1)))

    @classmethod
    def rho(cls, rank: int) -> "Weight":
        return cls((1,) * rank)

    def __len__(self):
        return len(self.coords)

    def __iter__(self) -> Iterator[PrimeScalar]:
        return iter(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __add__(self, other: "Weight") -> "Weight":
        if not isinstance(other, Weight):
            return NotImplemented
        _same_rank(self, other)
        return Weight(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        if not isinstance(other, Weight):
            return NotImplemented
        _same_rank(self, other)
        return Weight(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-x for x in self.coords))

    def __mul__(self, k) -> "Weight":
        if not isinstance(k, (int, PrimeScalar)) or isinstance(k, bool):
            return NotImplemented
        return Weight(tuple(x * k for x in self.coords))

    __rmul__ = __mul__

    @property
    def is_constant(self) -> bool:
        return all(c.is_constant for c in self.coords)

    def at(self, p: int) -> "Weight":
        """Substitute a value for ``p`` in every coordinate."""
        return Weight(tuple(c.at(p) for c in self.coords))

    def normalize(self, mode: PrimeMode) -> "Weight":
        return Weight(tuple(mode.normalize(c) for c in self.coords))

    def ints(self) -> tuple[int, ...]:
        if not self.is_constant:
            raise ValueError(f"weight {self} depends on p")
        return tuple(c.b for c in self.coords)

    def is_dominant(self, mode: PrimeMode) -> bool:
        return all(is_nonnegative(c, mode) for c in self.coords)

    def is_regular(self, mode: PrimeMode) -> bool:
        return all(compare(c, 0, mode) != 0 for c in self.coords)

    @property
    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple((c.a, c.b) for c in self.coords)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coords]

    @classmethod
    def from_json(cls, obj) -> "Weight":
        return cls(tuple(PrimeScalar.from_json(x) for x in obj))

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"Weight{self}"


def _same_rank(x: Weight, y: Weight) -> None:
    if len(x) != len(y):
        raise ValueError(f"rank mismatch: {x} vs {y}")


def format_weight(mu: Weight, style: str = "text") -> str:
    """Render ``mu`` as a combination of fundamental weights, e.g. ``(p-8)ω1+ω6``."""
    omega = "\\omega_{}" if style == "latex" else "ω{}"
    parts = []
    for i, c in enumerate(mu.coords, start=1):
        if c == PrimeScalar(0, 0):
            continue
        if c == PrimeScalar(0, 1):
            coef = ""
        elif c.is_constant:
            coef = str(c.b)
        elif c.b == 0 and c.a in (1, -1):
            coef = str(c)
        else:
            coef = f"({c})"
        term = coef + omega.format(i)
        if parts and not term.startswith("-"):
            term = "+" + term
        parts.append(term)
    return "".join(parts) if parts else "0"


@dataclass(frozen=True)
class RootVector:
    """``m`` times the root with simple-root coefficients ``coeffs``."""

    coeffs: tuple[int, ...]
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.m < 1:
            raise ValueError("multiplier must be positive")

    @property
    def scaled(self) -> tuple[int, ...]:
        """Coefficients of ``m * alpha``, as printed in the tables."""
        return tuple(self.m * c for c in self.coeffs)

    def times(self, m: int) -> "RootVector":
        return RootVector(self.coeffs, m)

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def __str__(self):
        s = "[" + ", ".join(map(str, self.coeffs)) + "]"
        return s if self.m == 1 else f"{self.m}*{s}"


def _det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(map(Fraction, r)) for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def _symmetrizer(cartan: Sequence[Sequence[int]]) -> tuple[int, ...]:
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or cartan[i][j] == 0:
                    continue
                # d_i c(i,j) = d_j c(j,i)
                dj = d[i] * cartan[i][j] / cartan[j][i]
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    raise CartanError("Cartan matrix is not symmetrizable")
    den = lcm(*(x.denominator for x in d))
    ints = [int(x * den) for x in d]
    if any(x <= 0 for x in ints):
        raise CartanError("Cartan matrix is not symmetrizable by positive integers")
    return tuple(ints)


@dataclass(frozen=True)
class CartanData:
    """Finite-type Cartan matrix with positive symmetrizer."""

    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...] = ()
    name: str = ""
    bourbaki_labels: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        c = tuple(tuple(int(x) for x in row) for row in self.cartan)
        object.__setattr__(self, "cartan", c)
        n = len(c)
        if n == 0 or any(len(row) != n for row in c):
            raise CartanError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if c[i][i] != 2:
                raise CartanError(f"diagonal entry ({i + 1},{i + 1}) is {c[i][i]}, not 2")
            for j in range(n):
                if i != j:
                    if c[i][j] > 0:
                        raise CartanError(f"off-diagonal entry ({i + 1},{j + 1}) is positive")
                    if (c[i][j] == 0) != (c[j][i] == 0):
                        raise CartanError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) disagree on zero")
        d = _symmetrizer(c) if not self.symmetrizer else tuple(self.symmetrizer)
        if len(d) != n or any(x <= 0 for x in d):
            raise CartanError("symmetrizer must have one positive entry per node")
        for i in range(n):
            for j in range(n):
                if d[i] * c[i][j] != d[j] * c[j][i]:
                    raise CartanError("symmetrizer does not symmetrize the Cartan matrix")
        object.__setattr__(self, "symmetrizer", d)
        sym = [[d[i] * c[i][j] for j in range(n)] for i in range(n)]
        for k in range(1, n + 1):
            if _det([row[:k] for row in sym[:k]]) <= 0:
                raise CartanError("Cartan matrix is not of finite type")

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def entry(self, i: int, j: int) -> int:
        """``c(i, j) = <alpha_j, alpha_i^vee>`` with 1-based indices."""
        return self.cartan[i - 1][j - 1]

    def simple_root(self, j: int) -> RootVector:
        return RootVector(tuple(int(k == j) for k in range(1, self.rank + 1)))

    @cached_property
    def positive_roots(self) -> tuple[RootVector, ...]:
        return tuple(positive_roots(self))

    @cached_property
    def _coroot_table(self) -> dict:
        return {r.coeffs: _coroot_coeffs(self, r.coeffs) for r in self.positive_roots}

    def coroot(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        """Simple-coroot coefficients of the coroot of the root ``coeffs``."""
        coeffs = tuple(coeffs)
        cv = self._coroot_table.get(coeffs)
        if cv is None:
            cv = _coroot_coeffs(self, coeffs)
        return cv

    def is_root(self, coeffs: Sequence[int]) -> bool:
        coeffs = tuple(coeffs)
        return coeffs in self._coroot_table or tuple(-c for c in coeffs) in self._coroot_table

    def norm(self, coeffs: Sequence[int]) -> int:
        """Symmetrized squared length, with ``(alpha_i, alpha_i) = 2 d_i``."""
        n = self.rank
        return sum(
            coeffs[i] * coeffs[j] * self.symmetrizer[i] * self.cartan[i][j]
            for i in range(n)
            for j in range(n)
        )

    @property
    def rho(self) -> Weight:
        return Weight.rho(self.rank)

    def to_json(self) -> dict:
        return {"name": self.name, "rank": self.rank, "matrix": [list(r) for r in self.cartan]}


def _coroot_coeffs(data: CartanData, coeffs: Sequence[int]) -> tuple[int, ...]:
    norm = data.norm(coeffs)
    if norm <= 0:
        raise CartanError(f"{list(coeffs)} is not a root")
    out = []
    for j, c in enumerate(coeffs):
        q = Fraction(2 * c * data.symmetrizer[j], norm)
        if q.denominator != 1:
            raise CartanError(f"{list(coeffs)} is not a root")
        out.append(int(q))
    return tuple(out)


def positive_roots(data: CartanData) -> list[RootVector]:
    """All positive roots, by closing the simple roots under simple reflections."""
    n = data.rank
    simple = [tuple(int(k == j) for k in range(n)) for j in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                k = sum(beta[j] * data.cartan[i][j] for j in range(n))
                if k == 0:
                    continue
                gamma = tuple(beta[j] - (k if j == i else 0) for j in range(n))
                if all(x >= 0 for x in gamma) and any(gamma) and gamma not in found:
                    found.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return [RootVector(r) for r in sorted(found)]


def pairing(mu: Weight, alpha: RootVector, data: CartanData) -> PrimeScalar:
    """``<mu, (m alpha)^vee>`` taken as ``m <mu, alpha^vee>``."""
    cv = data.coroot(alpha.coeffs)
    total = PrimeScalar(0, 0)
    for c, x in zip(cv, mu.coords):
        if c:
            total = total + x * c
    return total * alpha.m


def root_as_weight(alpha: RootVector, data: CartanData) -> Weight:
    """Fundamental-weight coordinates of ``m * alpha``."""
    n = data.rank
    return Weight(
        tuple(alpha.m * sum(alpha.coeffs[j] * data.cartan[i][j] for j in range(n)) for i in range(n))
    )


def highest_root(data: CartanData) -> RootVector:
    return max(data.positive_roots, key=lambda r: (r.height, r.coeffs))


# --- presets --------------------------------------------------------------


def from_edges(rank: int, edges: Iterable[tuple[int, int]], name: str = "") -> CartanData:
    """Simply laced Cartan data from a list of 1-based Dynkin edges."""
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        if not (1 <= i <= rank and 1 <= j <= rank) or i == j:
            raise CartanError(f"bad edge {(i, j)}")
        c[i - 1][j - 1] = c[j - 1][i - 1] = -1
    return CartanData(tuple(map(tuple, c)), name=name)


def from_json(obj) -> CartanData:
    """Load ``{rank, edges}`` or ``{rank, matrix}``; ``obj`` may be a dict, path, or JSON text."""
    if not isinstance(obj, dict):
        text = str(obj)
        if not text.lstrip().startswith("{"):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        obj = json.loads(text)
    name = obj.get("name", "")
    if "matrix" in obj:
        data = CartanData(tuple(tuple(r) for r in obj["matrix"]), name=name)
        if "rank" in obj and obj["rank"] != data.rank:
            raise CartanError("rank does not match matrix size")
        return data
    if "edges" in obj:
        return from_edges(int(obj["rank"]), [tuple(e) for e in obj["edges"]], name=name)
    raise CartanError("Cartan description needs 'matrix' or 'edges'")


# Node 4 is the branch node hanging off node 3; nodes 1-2-3-5-6 form the chain.
E6_EDGES = ((1, 2), (2, 3), (3, 5), (5, 6), (3, 4))
# our index -> Bourbaki index (Bourbaki chain 1-3-4-5-6, node 2 on node 4)
E6_TO_BOURBAKI = {1: 1, 2: 3, 3: 4, 4: 2, 5: 5, 6: 6}
# diagram automorphism swapping the two long arms
E6_DIAGRAM_AUTOMORPHISM = {1: 6, 2: 5, 3: 3, 4: 4, 5: 2, 6: 1}

E6 = CartanData(from_edges(6, E6_EDGES).cartan, name="E6", bourbaki_labels=E6_TO_BOURBAKI)


def cartan_type(letter: str, n: int) -> CartanData:
    """Cartan data of type ``letter`` and rank ``n`` in Bourbaki labelling.

    ``cartan_type("E", 6)`` uses Bourbaki labels; :data:`E6` is the preset used
    everywhere else in this package.
    """
    letter = letter.upper()
    chain = [(i, i + 1) for i in range(1, n)]
    if letter == "A" and n >= 1:
        return from_edges(n, chain, name=f"A{n}")
    if letter == "D" and n >= 4:
        return from_edges(n, chain[:-1] + [(n - 2, n)], name=f"D{n}")
    if letter == "E" and n in (6, 7, 8):
        return from_edges(n, [(1, 3), (3, 4), (4, 2)] + [(i, i + 1) for i in range(4, n)], name=f"E{n}")
    if letter in "BCFG":
        base = from_edges(n, chain)
        c = [list(r) for r in base.cartan]
        if letter == "B" and n >= 2:
            c[n - 1][n - 2] = -2
        elif letter == "C" and n >= 2:
            c[n - 2][n - 1] = -2
        elif letter == "F" and n == 4:
            c[2][1] = -2
        elif letter == "G" and n == 2:
            c[1][0] = -3
        else:
            raise CartanError(f"no finite type {letter}{n}")
        return CartanData(tuple(map(tuple, c)), name=f"{letter}{n}")
    raise CartanError(f"no finite type {letter}{n}")


def preset(name: str) -> CartanData:
    """Look up a preset such as ``"E6"`` (our labelling) or ``"B3"``."""
    name = name.strip().upper()
    if name == "E6":
        return E6
    if len(name) < 2 or not name[1:].isdigit():
        raise CartanError(f"unknown Cartan type {name!r}")
    return cartan_type(name[0], int(name[1:]))


# --- Euclidean model of E6 --------------------------------------------------


Vec8 = tuple[Fraction, ...]


def _v(*xs, scale=1) -> Vec8:
    return tuple(Fraction(x, scale) for x in xs)


def _e(*pairs) -> Vec8:
    v = [Fraction(0)] * 8
    for i, s in pairs:
        v[i - 1] += s
    return tuple(v)


def dot(x: Vec8, y: Vec8) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


@dataclass(frozen=True)
class E6Embedding:
    simple_roots: tuple[Vec8, ...]
    fundamental_weights: tuple[Vec8, ...]

    def embed_root(self, coeffs: Sequence[int]) -> Vec8:
        out = [Fraction(0)] * 8
        for c, a in zip(coeffs, self.simple_roots):
            for k in range(8):
                out[k] += c * a[k]
        return tuple(out)

    def embed_weight(self, coords: Sequence[int]) -> Vec8:
        out = [Fraction(0)] * 8
        for c, w in zip(coords, self.fundamental_weights):
            for k in range(8):
                out[k] += c * w[k]
        return tuple(out)

    def coroot_pairing(self, x: Vec8, beta: Vec8) -> Fraction:
        """``2 (x, beta) / (beta, beta)``."""
        return 2 * dot(x, beta) / dot(beta, beta)

    def validate(self, data: CartanData = E6) -> None:
        """Raise :class:`CartanError` unless the vectors reproduce ``data``."""
        a, w = self.simple_roots, self.fundamental_weights
        for i in range(6):
            for j in range(6):
                if self.coroot_pairing(a[j], a[i]) != data.cartan[i][j]:
                    raise CartanError(f"Gram mismatch at ({i + 1},{j + 1})")
                if self.coroot_pairing(w[i], a[j]) != (i == j):
                    raise CartanError(f"duality fails for omega_{i + 1}, alpha_{j + 1}")


def euclidean_embed(data: CartanData = E6) -> E6Embedding:
    """Explicit vectors in R^8 for the simple roots and fundamental weights of E6."""
    if data.cartan != E6.cartan:
        raise UnsupportedMode("the Euclidean model is only available for the E6 preset")
    h = Fraction(1, 2)
    roots = (
        _e((4, 1), (5, -1)),
        _e((5, 1), (6, -1)),
        _e((6, 1), (7, -1)),
        _e((7, 1), (8, 1)),
        _e((7, 1), (8, -1)),
        _e((1, h), (2, -h), (3, -h), (4, -h), (5, -h), (6, -h), (7, -h), (8, h)),
    )
    weights = (
        _v(1, -1, -1, 3, 0, 0, 0, 0, scale=3),
        _v(2, -2, -2, 3, 3, 0, 0, 0, scale=3),
        _v(1, -1, -1, 1, 1, 1, 0, 0),
        _v(1, -1, -1, 1, 1, 1, 1, 1, scale=2),
        _v(5, -5, -5, 3, 3, 3, 3, -3, scale=6),
        _v(2, -2, -2, 0, 0, 0, 0, 0, scale=3),
    )
    emb = E6Embedding(roots, weights)
    emb.validate(data)
    return emb


def euclidean_e6_roots() -> list[Vec8]:
    """The 72 roots of E6 listed directly in coordinates of R^8."""
    out = []
    for i, j in itertools.combinations(range(4, 9), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            out.append(_e((i, si), (j, sj)))
    h = Fraction(1, 2)
    for signs in itertools.product((1, -1), repeat=5):
        if signs.count(-1) % 2:
            continue
        for overall in (1, -1):
            pairs = [(1, h), (2, -h), (3, -h)] + [(k, s * h) for k, s in zip(range(4, 9), signs)]
            out.append(tuple(overall * x for x in _e(*pairs)))
    return out
