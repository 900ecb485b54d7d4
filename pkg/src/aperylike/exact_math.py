"""Exact integer helpers: binomials, gcds, and small factorizations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import comb, gcd, isqrt
from typing import Iterable


def binom(m: int, r: int) -> int:
    """Generalized binomial coefficient ``m(m-1)...(m-r+1) / r!``.

    The upper argument may be any integer; ``binom(m, r) == 0`` for ``r < 0``.
    Negative ``m`` is handled through upper negation,
    ``C(m, r) = (-1)^r C(r - m - 1, r)``.
    """
    if r < 0:
        return 0
    if m >= 0:
        return comb(m, r)
    value = comb(r - m - 1, r)
    return -value if r & 1 else value


def binom_zero_neg(m: int, r: int) -> int:
    """Binomial coefficient that vanishes whenever the upper argument is negative."""
    if m < 0 or r < 0:
        return 0
    return comb(m, r)


def gcd_all(values: Iterable[int]) -> int:
    """Nonnegative gcd of ``values``; 0 for an empty or all-zero input."""
    return reduce(gcd, values, 0)


def mod(value: int, modulus: int) -> int:
    """Nonnegative remainder of ``value`` modulo a positive ``modulus``."""
    if modulus <= 0:
        raise ValueError(f"modulus must be positive, got {modulus}")
    return value % modulus


def congruent(a: int, b: int, modulus: int) -> bool:
    return mod(a - b, modulus) == 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer as ``((p, e), ...)``, primes increasing."""

    prime_powers: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.prime_powers)

    def value(self) -> int:
        out = 1
        for p, e in self.prime_powers:
            out *= p**e
        return out

    def as_dict(self) -> dict[int, int]:
        return dict(self.prime_powers)


def _require_positive(n: int) -> None:
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")


def factorize(n: int) -> Factorization:
    """Factor ``n >= 1`` by trial division."""
    _require_positive(n)
    powers = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            powers.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        powers.append((n, 1))
    for p, _ in powers:
        assert is_prime(p), p
    return Factorization(tuple(powers))


def radical(n: int) -> int:
    """Product of the distinct primes dividing ``n`` (largest square-free divisor)."""
    out = 1
    for p in factorize(n).primes:
        out *= p
    return out


def squarefree_part(n: int) -> int:
    """Product of the primes that divide ``n`` exactly once."""
    out = 1
    for p, e in factorize(n).prime_powers:
        if e == 1:
            out *= p
    return out
