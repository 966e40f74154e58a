"""Exact integers that may depend affinely on a prime ``p``.

Two regimes are supported.  In a :class:`Concrete` mode the prime is a fixed
integer and every scalar has a definite value.  In a :class:`Generic` mode the
scalar ``a*p + b`` stands for a whole family of integers, one for every prime
``p >= P0``, and a comparison is only answered when its outcome is the same
for every member of the family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


class Indeterminate(ArithmeticError):
    """The sign of an affine scalar changes somewhere in ``p >= P0``."""


class UnsupportedMode(ValueError):
    """An operation was requested in a mode that does not support it."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Concrete:
    """A fixed prime ``p``."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"Concrete mode needs a prime, got {self.p!r}")

    @property
    def prime(self) -> "PrimeScalar":
        return PrimeScalar(0, self.p)

    def normalize(self, x: "PrimeScalar") -> "PrimeScalar":
        return PrimeScalar(0, x.at(self.p))

    def to_json(self) -> dict:
        return {"concrete": self.p}

    def __str__(self):
        return f"p={self.p}"


@dataclass(frozen=True)
class Generic:
    """All primes ``p >= P0`` at once."""

    P0: int = 11

    def __post_init__(self):
        if not isinstance(self.P0, int) or self.P0 < 11:
            raise ValueError(f"Generic mode needs P0 >= 11, got {self.P0!r}")

    @property
    def prime(self) -> "PrimeScalar":
        return PrimeScalar(1, 0)

    def normalize(self, x: "PrimeScalar") -> "PrimeScalar":
        return x

    def to_json(self) -> dict:
        return {"generic": self.P0}

    def __str__(self):
        return f"p>={self.P0}"


PrimeMode = Union[Concrete, Generic]


def mode_from_json(obj: dict) -> PrimeMode:
    if set(obj) == {"concrete"}:
        return Concrete(int(obj["concrete"]))
    if set(obj) == {"generic"}:
        return Generic(int(obj["generic"]))
    raise ValueError(f"bad mode description: {obj!r}")


@dataclass(frozen=True, order=True)
class PrimeScalar:
    """The integer ``a*p + b``; a plain integer when ``a == 0``."""

    a: int = 0
    b: int = 0

    @classmethod
    def const(cls, n: int) -> "PrimeScalar":
        return cls(0, n)

    @classmethod
    def coerce(cls, x: "ScalarLike") -> "PrimeScalar":
        if isinstance(x, PrimeScalar):
            return x
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot use {x!r} as a scalar")
        return cls(0, x)

    @property
    def is_constant(self) -> bool:
        return self.a == 0

    def at(self, p: int) -> int:
        """Value after substituting ``p``."""
        return self.a * p + self.b

    def __add__(self, other):
        try:
            o = PrimeScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return PrimeScalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return PrimeScalar(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = PrimeScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return PrimeScalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PrimeScalar):
            # affine * affine stays affine only if one side is constant
            if other.a == 0:
                other = other.b
            elif self.a == 0:
                return other * self.b
            else:
                raise ValueError("product of two p-dependent scalars is not affine")
        if isinstance(other, bool) or not isinstance(other, int):
            return NotImplemented
        return PrimeScalar(self.a * other, self.b * other)

    __rmul__ = __mul__

    def to_json(self) -> list:
        return [self.a, self.b]

    @classmethod
    def from_json(cls, obj) -> "PrimeScalar":
        if isinstance(obj, int):
            return cls(0, obj)
        a, b = obj
        return cls(int(a), int(b))

    def __str__(self):
        if self.a == 0:
            return str(self.b)
        if self.a == 1:
            head = "p"
        elif self.a == -1:
            head = "-p"
        else:
            head = f"{self.a}p"
        if self.b == 0:
            return head
        return f"{head}{'+' if self.b > 0 else '-'}{abs(self.b)}"

    def __repr__(self):
        return f"PrimeScalar({self.a}, {self.b})"


ScalarLike = Union[PrimeScalar, int]

P = PrimeScalar(1, 0)


def sign(x: ScalarLike, mode: PrimeMode) -> int:
    """Sign of ``x`` in ``mode``; raises :class:`Indeterminate` if not constant."""
    x = PrimeScalar.coerce(x)
    if isinstance(mode, Concrete):
        v = x.at(mode.p)
        return (v > 0) - (v < 0)
    if x.a == 0:
        return (x.b > 0) - (x.b < 0)
    at_p0 = x.a * mode.P0 + x.b
    if x.a > 0 and at_p0 > 0:
        return 1
    if x.a < 0 and at_p0 < 0:
        return -1
    raise Indeterminate(f"sign of {x} is not constant for {mode}")


def is_nonnegative(x: ScalarLike, mode: PrimeMode) -> bool:
    """Whether ``x >= 0``; unlike :func:`sign` this is decided for ``p - P0``."""
    x = PrimeScalar.coerce(x)
    if isinstance(mode, Concrete):
        return x.at(mode.p) >= 0
    if x.a == 0:
        return x.b >= 0
    at_p0 = x.a * mode.P0 + x.b
    if x.a > 0 and at_p0 >= 0:
        return True
    if x.a < 0 and at_p0 < 0:
        return False
    raise Indeterminate(f"{x} >= 0 does not hold uniformly for {mode}")


def compare(x: ScalarLike, y: ScalarLike, mode: PrimeMode) -> int:
    """Return -1, 0 or 1 as ``x < y``, ``x == y`` or ``x > y`` in ``mode``."""
    return sign(PrimeScalar.coerce(x) - PrimeScalar.coerce(y), mode)


def vp(n: int, p: Union[int, PrimeMode]) -> int:
    """Exponent of the prime ``p`` in ``n``."""
    if isinstance(p, Generic):
        raise UnsupportedMode("v_p needs a concrete prime")
    if isinstance(p, Concrete):
        p = p.p
    if n < 1:
        raise ValueError(f"v_p is defined for positive integers, got {n}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e
