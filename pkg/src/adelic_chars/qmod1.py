"""Phases in Q/Z and p-adic fractional parts.

A phase r in [0, 1) stands for the root of unity exp(2 pi i r).  Character
values are either a phase or zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class NotPrime(ValueError):
    pass


@lru_cache(maxsize=4096)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for q in range(3, math.isqrt(p) + 1, 2):
        if p % q == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of |n| in increasing order."""
    n = abs(n)
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out.append(n)
    return out


def frac(x: Fraction) -> Fraction:
    """Real fractional part, in [0, 1)."""
    x = Fraction(x)
    return x - math.floor(x)


def frac_p(x: Fraction, p: int) -> Fraction:
    """The p-adic fractional part of x.

    The unique f in [0, 1) whose denominator is a power of p and such that
    x - f has denominator prime to p.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    x = Fraction(x)
    den = x.denominator
    pe = 1
    while den % p == 0:
        den //= p
        pe *= p
    if pe == 1:
        return Fraction(0)
    # x = a / (pe * den) with gcd(den, p) = 1; f = c / pe with c = a * den^-1 mod pe
    c = (x.numerator * pow(den, -1, pe)) % pe
    return Fraction(c, pe)


def global_phase_zero(q: Fraction) -> bool:
    """frac(q) - sum_p frac_p(q) is an integer.

    This is the partial-fraction identity that makes the standard adelic
    character trivial on the diagonal copy of Q.
    """
    q = Fraction(q)
    total = frac(q) - sum((frac_p(q, p) for p in prime_factors(q.denominator)), Fraction(0))
    return total.denominator == 1


@dataclass(frozen=True, order=True)
class Phase:
    """An element of Q/Z, stored by its representative in [0, 1)."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - math.floor(v))

    def __add__(self, other: "Phase") -> "Phase":
        return Phase(self.value + other.value)

    def __sub__(self, other: "Phase") -> "Phase":
        return Phase(self.value - other.value)

    def __neg__(self) -> "Phase":
        return Phase(-self.value)

    def __mul__(self, n: int) -> "Phase":
        return Phase(self.value * n)

    def is_zero(self) -> bool:
        return self.value == 0

    def order(self) -> int:
        return self.value.denominator

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * float(self.value))

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"

    @classmethod
    def parse(cls, s: str) -> "Phase":
        return cls(Fraction(s))


def phase_add(a: Phase, b: Phase) -> Phase:
    return a + b


def phase_neg(a: Phase) -> Phase:
    return -a


@dataclass(frozen=True)
class CharValue:
    """A character value: zero (``phase is None``) or exp(2 pi i phase)."""

    phase: Phase | None

    @classmethod
    def root(cls, r) -> "CharValue":
        return cls(r if isinstance(r, Phase) else Phase(Fraction(r)))

    @property
    def is_zero(self) -> bool:
        return self.phase is None

    def __mul__(self, other: "CharValue") -> "CharValue":
        if self.phase is None or other.phase is None:
            return ZERO
        return CharValue(self.phase + other.phase)

    def conjugate(self) -> "CharValue":
        return self if self.phase is None else CharValue(-self.phase)

    def is_real_rational(self) -> bool:
        return self.phase is None or self.phase.value in (0, Fraction(1, 2))

    def to_rational(self) -> Fraction:
        """Exact value when it lies in {-1, 0, 1}."""
        if self.phase is None:
            return Fraction(0)
        if self.phase.value == 0:
            return Fraction(1)
        if self.phase.value == Fraction(1, 2):
            return Fraction(-1)
        raise ValueError(f"exp(2 pi i {self.phase}) is not rational")

    def __str__(self) -> str:
        return "0" if self.phase is None else f"e({self.phase})"


ZERO = CharValue(None)
ONE = CharValue(Phase(Fraction(0)))


def cv_mul(a: CharValue, b: CharValue) -> CharValue:
    return a * b
