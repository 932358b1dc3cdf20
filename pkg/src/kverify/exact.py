"""Exact Bernoulli numbers, p-adic valuations and multiplicative generators.

Sign convention used throughout the package:

    z / (exp(z) - 1) + z / 2  =  1 + sum_{n >= 1} (-1)^(n-1) B_n z^(2n) / (2n)!

so every B_n here is positive: B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, B_7 = 7/6.
This is the classical topologist's indexing.  Readers used to the signed
convention indexed by 2n should map B_n here to |B_{2n}| there; the odd
coefficients of the series above all vanish.

The primary algorithm expands the generating series with exact rational
arithmetic.  ``bernoulli_recursive`` reaches the same numbers through the
binomial recurrence and exists so that callers (the CLI and the acceptance
suite) can cross-check the two routes against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd

from . import series

#: Distinguished valuation of zero.
INFINITE = math.inf


def frac_str(q: Fraction | int) -> str:
    """Serialize a rational as "num/denom" in lowest terms; zero is "0/1"."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class Valuation:
    """p-adic valuation of a rational; value is an int, or INFINITE for zero."""

    prime: int
    value: int | float

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITE


def _int_valuation(n: int, p: int) -> int:
    # n must be nonzero
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(q: Fraction | int, p: int) -> Valuation:
    """p-adic valuation of a rational, with vp(0) = INFINITE."""
    _require_prime(p)
    q = Fraction(q)
    if q == 0:
        return Valuation(p, INFINITE)
    return Valuation(p, _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p))


@lru_cache(maxsize=None)
def _series_coefficients(order: int) -> series.Coeffs:
    """Coefficients of z/(exp(z) - 1) + z/2 through z^order."""
    denom = tuple(Fraction(1, factorial(m + 1)) for m in range(order + 1))
    g = list(series.inv(denom, order))
    if order >= 1:
        g[1] += Fraction(1, 2)
    return tuple(g)


def bernoulli(n: int) -> Fraction:
    """B_n in the positive convention, read off the generating series."""
    if n < 1:
        raise ValueError("Bernoulli index starts at 1")
    c = _series_coefficients(2 * n)[2 * n]
    return (-1) ** (n - 1) * c * factorial(2 * n)


def bernoulli_table(max_index: int) -> list[Fraction]:
    """[B_1, ..., B_max_index] from a single series expansion."""
    if max_index < 1:
        raise ValueError("Bernoulli index starts at 1")
    coeffs = _series_coefficients(2 * max_index)
    return [(-1) ** (n - 1) * coeffs[2 * n] * factorial(2 * n) for n in range(1, max_index + 1)]


def bernoulli_recursive(n: int) -> Fraction:
    """Independent route: the binomial recurrence in the signed convention,
    resigned to match the positive convention above."""
    if n < 1:
        raise ValueError("Bernoulli index starts at 1")
    m = 2 * n
    b = [Fraction(0)] * (m + 1)
    b[0] = Fraction(1)
    for j in range(1, m + 1):
        s = sum(comb(j + 1, i) * b[i] for i in range(j))
        b[j] = -s / (j + 1)
    return (-1) ** (n - 1) * b[m]


def generating_series_roundtrip(max_index: int) -> bool:
    """Rebuild the series from B_1..B_max_index and compare coefficientwise.

    Checks the even coefficients and that every odd coefficient vanishes.
    """
    order = 2 * max_index
    direct = _series_coefficients(order)
    rebuilt = [Fraction(0)] * (order + 1)
    rebuilt[0] = Fraction(1)
    for n in range(1, max_index + 1):
        rebuilt[2 * n] = (-1) ** (n - 1) * bernoulli(n) / factorial(2 * n)
    return tuple(rebuilt) == direct


def num_denom(n: int) -> tuple[int, int]:
    """(Num, Denom) of B_n / 2n in lowest terms."""
    q = bernoulli(n) / (2 * n)
    return (q.numerator, q.denominator)


def multiplicative_order(a: int, modulus: int) -> int:
    """Order of a in (Z/modulus)*; a must be a unit."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not a unit modulo {modulus}")
    x = a % modulus
    order = 1
    while x != 1:
        x = (x * a) % modulus
        order += 1
    return order


def choose_k(p: int) -> int:
    """Smallest odd k >= 3 generating (Z/p^2)* for odd p; k = 3 at p = 2.

    The group (Z/p^2)* is cyclic of order p(p-1); odd k hit every residue
    class modulo the odd number p^2, so the search terminates.
    """
    _require_prime(p)
    if p == 2:
        return 3
    target = p * (p - 1)
    k = 3
    while True:
        if k % p != 0 and multiplicative_order(k, p * p) == target:
            return k
        k += 2


@dataclass(frozen=True)
class ValuationCheck:
    """Result of comparing v_p(k^(2n) - 1) with the denominator valuation."""

    prime: int
    index: int
    k: int
    lhs_valuation: int
    rhs_valuation: int
    passed: bool
    note: str


def denominator_valuation_check(p: int, n: int) -> ValuationCheck:
    """Compare v_p(k^(2n) - 1) against v_p(Denom(B_n/2n)) for k = choose_k(p).

    At p = 2 the right side carries an extra factor of 2; the note records
    when that route is taken.
    """
    _require_prime(p)
    if n < 1:
        raise ValueError("index starts at 1")
    k = choose_k(p)
    lhs = _int_valuation(k ** (2 * n) - 1, p)
    _, denom = num_denom(n)
    if p == 2:
        rhs = _int_valuation(2 * denom, 2)
        note = "extra factor of 2 applied on the denominator side"
    else:
        rhs = _int_valuation(denom, p)
        note = ""
    return ValuationCheck(p, n, k, lhs, rhs, lhs == rhs, note)
