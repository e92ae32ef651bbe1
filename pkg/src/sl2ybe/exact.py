"""Exact scalar arithmetic: half-integer labels, square-root-carrying
rationals, and quadratic extensions Q(sqrt(d)).

All values are immutable; rationals are `fractions.Fraction` throughout.
No floating point enters this module except through explicit `float()`
conversions requested by the caller.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

__all__ = [
    "DomainError",
    "HalfInt",
    "QuadExt",
    "Rational",
    "SqrtRational",
    "factorial",
    "format_rational",
    "parse_rational",
    "sqrt_canonicalize",
    "squarefree_split",
]


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


_fact_cache = [1]
_fact_lock = threading.Lock()


def factorial(n: int) -> int:
    """n! with a growing cache; concurrent readers see correct values."""
    if n < 0:
        raise DomainError(f"factorial of negative argument {n}")
    if n < len(_fact_cache):
        return _fact_cache[n]
    with _fact_lock:
        while len(_fact_cache) <= n:
            _fact_cache.append(_fact_cache[-1] * len(_fact_cache))
    return _fact_cache[n]


def minus_one_pow(e: int) -> int:
    """(-1)**e kept in integers for arbitrary (possibly negative) e."""
    return -1 if e % 2 else 1


# Radicands produced by this package are products of small factorials,
# hence smooth; trial division up to this bound extracts every square.
_TRIAL_BOUND = 100_000


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = m*m*d with d squarefree (for smooth n); returns (m, d)."""
    if n < 0:
        raise DomainError("squarefree_split of negative integer")
    if n == 0:
        return 0, 1
    m, d, p = 1, n, 2
    while p * p <= d and p <= _TRIAL_BOUND:
        while d % (p * p) == 0:
            d //= p * p
            m *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(d)
    if r * r == d:
        return m * r, 1
    return m, d


@dataclass(frozen=True, order=True)
class HalfInt:
    """A spin or level label x stored as twice = 2x, so all index
    arithmetic stays in plain integers."""

    twice: int

    @classmethod
    def coerce(cls, value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, Fraction):
            if value.denominator not in (1, 2):
                raise DomainError(f"{value} is not a half-integer")
            return cls(int(2 * value))
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        frac = Fraction(text.strip())
        if frac.denominator not in (1, 2):
            raise DomainError(f"{text!r} is not a half-integer")
        return cls(int(2 * frac))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - other.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def sqrt_canonicalize(coeff: Fraction, radicand: Fraction) -> "SqrtRational":
    """Canonical form of coeff*sqrt(radicand): all square factors moved
    into the coefficient, radicand reduced to a squarefree integer."""
    coeff, radicand = Fraction(coeff), Fraction(radicand)
    if radicand < 0:
        raise DomainError("negative radicand (no complex support)")
    if coeff == 0 or radicand == 0:
        return SqrtRational._raw(Fraction(0), 1)
    # sqrt(p/q) = sqrt(p*q)/q
    p, q = radicand.numerator, radicand.denominator
    m, d = squarefree_split(p * q)
    return SqrtRational._raw(coeff * Fraction(m, q), d)


class SqrtRational:
    """Exact scalar coeff*sqrt(radicand) with rational coeff and a
    squarefree integer radicand (radicand == 1 iff the value is rational).

    Closed under multiplication.  Addition is defined only between values
    of the same radicand class; mixing classes raises, by design.
    """

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff, radicand=1):
        canon = sqrt_canonicalize(Fraction(coeff), Fraction(radicand))
        object.__setattr__(self, "coeff", canon.coeff)
        object.__setattr__(self, "radicand", canon.radicand)

    @classmethod
    def _raw(cls, coeff: Fraction, radicand: int) -> "SqrtRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeff", coeff)
        object.__setattr__(obj, "radicand", radicand)
        return obj

    def __setattr__(self, *args):
        raise AttributeError("SqrtRational is immutable")

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return self.coeff

    def _coerce(self, other) -> "SqrtRational":
        if isinstance(other, SqrtRational):
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtRational._raw(Fraction(other), 1)
        raise TypeError(f"cannot combine SqrtRational with {other!r}")

    def __mul__(self, other) -> "SqrtRational":
        other = self._coerce(other)
        return sqrt_canonicalize(self.coeff * other.coeff,
                                 Fraction(self.radicand * other.radicand))

    __rmul__ = __mul__

    def __neg__(self) -> "SqrtRational":
        return SqrtRational._raw(-self.coeff, self.radicand)

    def __add__(self, other) -> "SqrtRational":
        other = self._coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.radicand != other.radicand:
            raise ValueError(
                f"cannot add sqrt({self.radicand}) and sqrt({other.radicand}) terms")
        total = self.coeff + other.coeff
        if total == 0:
            return SqrtRational._raw(Fraction(0), 1)
        return SqrtRational._raw(total, self.radicand)

    __radd__ = __add__

    def __sub__(self, other) -> "SqrtRational":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SqrtRational":
        return (-self) + other

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coeff == other
        if isinstance(other, SqrtRational):
            return self.coeff == other.coeff and self.radicand == other.radicand
        return NotImplemented

    def __hash__(self):
        return hash((self.coeff, self.radicand))

    def __float__(self) -> float:
        return float(self.coeff) * math.sqrt(float(self.radicand))

    def __repr__(self) -> str:
        return f"SqrtRational({self.coeff!r}, {self.radicand!r})"

    def __str__(self) -> str:
        if self.is_rational:
            return format_rational(self.coeff)
        return f"{format_rational(self.coeff)}*sqrt({self.radicand})"


class QuadExt:
    """Element a + b*sqrt(d) of Q(sqrt(d)).

    The discriminant is canonicalized to a squarefree integer at
    construction (d == 1 means the value is plain rational).  Arithmetic
    between two genuinely irrational values requires matching d; rational
    values embed into any extension.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=1):
        a, b, d = Fraction(a), Fraction(b), Fraction(d)
        if d < 0:
            raise DomainError("negative discriminant (no complex support)")
        if b != 0 and d != 1:
            # fold sqrt(p/q) = (m/q) sqrt(d0)
            m, d0 = squarefree_split(d.numerator * d.denominator)
            b = b * Fraction(m, d.denominator)
            d = Fraction(d0)
        if b == 0 or d == 1:
            a, b, d = a + b * (d if b != 0 else 0), Fraction(0), Fraction(1)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", int(d))

    def __setattr__(self, *args):
        raise AttributeError("QuadExt is immutable")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.b != 0 and self.b != 0 and other.d != self.d:
                raise ValueError(
                    f"mixed discriminants sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other)
        return None

    def _field_d(self, other: "QuadExt") -> int:
        return self.d if self.b != 0 else other.d

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadExt(self.a + other.a, self.b + other.b, self._field_d(other))

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._field_d(other)
        return QuadExt(self.a * other.a + self.b * other.b * d,
                       self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        norm = self.a * self.a - self.d * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError(f"{self} is not invertible")
        return QuadExt(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.a == other.a and self.b == other.b and self.d == other.d
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        return f"QuadExt({self.a!r}, {self.b!r}, {self.d!r})"

    def __str__(self) -> str:
        if self.b == 0:
            return format_rational(self.a)
        sign = "+" if self.b >= 0 else "-"
        return f"{format_rational(self.a)} {sign} {format_rational(abs(self.b))}*sqrt({self.d})"
