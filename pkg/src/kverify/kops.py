"""Operations on truncated K-theory classes.

Adams operations act on the line class by L -> L^k, hence on u = L - 1 by
substitution u -> (1+u)^k - 1.  On top of them sit the bundle-theoretic
transfer classes for cyclic covers (rho, and the conjugate-average class r),
the p-typical difference operations theta, and the p-local logarithm built
from them.  The logarithm telescopes to (1 - psi^p/p) log(1-x); tests pin
that closed form, the code here only ever evaluates the defining sums.

Everything is exact.  Division by p^t is checked coefficient by coefficient
and raises IntegralityViolation, carrying the offending coefficient, rather
than silently producing a fraction: the divisibility IS the theorem in most
of the places these operations are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import is_prime, vp
from .polyring import (
    INTEGRAL,
    KClass,
    SuspensionClass,
    k_inverted,
    line_power,
    p_local,
    suspend,
)


class IntegralityViolation(ArithmeticError):
    """A class expected to be divisible by p^t is not."""

    def __init__(self, prime: int, t: int, index: int, coefficient: Fraction):
        self.prime = prime
        self.t = t
        self.index = index
        self.coefficient = coefficient
        super().__init__(
            f"coefficient {coefficient} of u^{index} is not divisible by "
            f"{prime}^{t}"
        )


@dataclass(frozen=True)
class OperationParams:
    """Validated (k, p) pair for the operations that need k prime to p."""

    k: int
    p: int
    t: int = 0

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.k < 2:
            raise ValueError(f"k = {self.k} must be at least 2")
        if gcd(self.k, self.p) != 1:
            raise ValueError(f"k = {self.k} must be prime to p = {self.p}")
        if self.t < 0:
            raise ValueError("t must be nonnegative")


def psi(k: int, f: KClass) -> KClass:
    """Adams operation psi^k: substitute u -> (1+u)^k - 1.

    Defined for any nonzero integer k (negative k through the expansion of
    (1+u)^k as a truncated series).  Coefficients of the result are integer
    combinations of the input coefficients, so the claim is preserved.
    """
    if k == 0:
        raise ValueError("psi^0 is not an operation on these classes")
    shifted = line_power(k, f.truncation) - 1
    result = KClass.zero(f.truncation, INTEGRAL)
    for c in reversed(f.coeffs):
        result = result * shifted + c
    return result.with_claim(f.claim)


def psi_on_suspension(k: int, s: SuspensionClass) -> SuspensionClass:
    # the suspension coordinate itself is scaled by k
    return SuspensionClass(psi(k, s.base) * k)


def lambda_line(a: int, truncation: int) -> KClass:
    """1 - L^a, the K-theory Euler class of the line with first Chern class a."""
    return KClass.one(truncation) - line_power(a, truncation)


def rho_line(k: int, a: int, truncation: int) -> KClass:
    """(1/k) * (1 + L^a + L^(2a) + ... + L^((k-1)a)), with k inverted."""
    if k < 1:
        raise ValueError("k must be positive")
    total = KClass.zero(truncation, INTEGRAL)
    for j in range(k):
        total = total + line_power(a * j, truncation)
    return (total * Fraction(1, k)).with_claim(k_inverted(k))


def rho_sum(k: int, exponents: tuple[int, ...], truncation: int) -> KClass:
    """The transfer class of a sum of lines: product of the line values."""
    result = KClass.one(truncation, k_inverted(k))
    for a in exponents:
        result = result * rho_line(k, a, truncation)
    return result


def r_line_conjugate(k: int, truncation: int) -> KClass:
    """The weighted average sum((k-1-i) L^i, i<k-1) / sum(L^i, i<k).

    Augmentation is (k-1)/2.  The numerator satisfies the exact polynomial
    identity (L - 1) * numerator = denominator - k, which the tests use as
    an algebra-level check independent of any series expansion.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    num = KClass.zero(truncation, INTEGRAL)
    for i in range(k - 1):
        num = num + (k - 1 - i) * line_power(i, truncation)
    den = KClass.zero(truncation, INTEGRAL)
    for i in range(k):
        den = den + line_power(i, truncation)
    return num * den.with_claim(k_inverted(k)).invert()


def r_virtual_conjugate_minus_one(k: int, truncation: int) -> KClass:
    """r^k applied to the virtual class (conjugate line minus one).

    Subtracting the augmentation (k-1)/2 leaves the reduced part whose
    s-numbers carry the Bernoulli eigenvalues.  Requires odd k so the
    subtracted scalar stays out of the 2-adic picture.
    """
    if k % 2 == 0:
        raise ValueError("k must be odd")
    return r_line_conjugate(k, truncation) - Fraction(k - 1, 2)


def _divide_p_power(f: KClass, p: int, t: int) -> KClass:
    """f / p^t, raising IntegralityViolation unless every coefficient allows it."""
    power = p**t
    out = []
    for i, c in enumerate(f.coeffs):
        if c != 0 and vp(c, p).value < t:
            raise IntegralityViolation(p, t, i, c)
        out.append(c / power)
    return KClass(out, f.truncation, p_local(p))


def _check_theta_input(p: int, t: int, claim) -> None:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if t < 0:
        raise ValueError("t must be nonnegative")
    if claim.kind not in ("integral", "p-local") or (
        claim.kind == "p-local" and claim.param != p
    ):
        raise ValueError(
            f"theta at p = {p} needs an integral or {p}-local input, "
            f"got claim {claim.label()}"
        )


def theta(p: int, t: int, f: KClass) -> KClass:
    """The p-typical difference operation (x^(p^t) - psi^p(x^(p^(t-1)))) / p^t.

    t = 0 is the identity.  The division is checked; for p-locally integral
    reduced input it always succeeds, and that success is exactly the
    integrality lemma the tests exercise.
    """
    _check_theta_input(p, t, f.claim)
    if f.augmentation != 0:
        raise ValueError("theta is defined on classes with augmentation zero")
    if t == 0:
        return f
    numerator = f ** (p**t) - psi(p, f ** (p ** (t - 1)))
    return _divide_p_power(numerator, p, t)


def theta_on_suspension(p: int, t: int, s: SuspensionClass) -> SuspensionClass:
    """theta on square-zero classes; all powers above the first vanish."""
    _check_theta_input(p, t, s.base.claim)
    if t == 0:
        return s
    numerator = s ** (p**t) - psi_on_suspension(p, s ** (p ** (t - 1)))
    return SuspensionClass(_divide_p_power(numerator.base, p, t))


def log_one_minus(x: KClass) -> KClass:
    """log(1 - x) = -sum x^m / m, truncated; x must be reduced."""
    if x.augmentation != 0:
        raise ValueError("argument must have augmentation zero")
    total = KClass.zero(x.truncation, INTEGRAL)
    xm = x
    for m in range(1, x.truncation + 1):
        if xm.is_zero():
            break
        total = total + xm * Fraction(-1, m)
        xm = xm * x
    return total


def artin_hasse_log(p: int, x: KClass) -> KClass:
    """The p-local logarithm of 1 - x: minus sum over n prime to p of
    (1/n) * sum over t of theta^(p^t)(x^n).

    x must be reduced (augmentation zero) so the powers climb the u-adic
    filtration and the sum is finite at each truncation.  The result is
    p-locally integral, which the final claim re-validates.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if x.augmentation != 0:
        raise ValueError("argument must have augmentation zero")
    truncation = x.truncation
    total = KClass.zero(truncation, INTEGRAL)
    xn = x
    for n in range(1, truncation + 1):
        if xn.is_zero():
            break
        if n % p != 0:
            inner = KClass.zero(truncation, INTEGRAL)
            t = 0
            while t == 0 or n * p ** (t - 1) <= truncation:
                inner = inner + theta(p, t, xn)
                t += 1
            total = total + inner * Fraction(-1, n)
        xn = xn * x
    return total.with_claim(p_local(p))


def artin_hasse_log_on_suspension(p: int, s: SuspensionClass) -> SuspensionClass:
    """Same sum on a square-zero class; only the n = 1 layer survives, and
    from t = 2 on both powers in the theta numerator are products of
    square-zero classes, so the t sum stops at 1."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    inner = theta_on_suspension(p, 0, s) + theta_on_suspension(p, 1, s)
    return -inner


def l_double_loop(p: int, f: KClass) -> KClass:
    """The double-loop form of the logarithm: suspend, take the p-local log
    of the corresponding unit, read off the base.

    The telescoping of the theta sum makes this f - psi^p(f); the tests
    freeze that identity rather than this function assuming it.
    """
    return artin_hasse_log_on_suspension(p, -suspend(f)).base
