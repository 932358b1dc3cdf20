"""Chern character bridge between the K-theory model and cohomology.

Cohomology of the projective space model is Q[e]/(e^(M+1)) with e of degree
two; a CohClass holds the coefficient list of a polynomial in e.  The Chern
character substitutes u -> exp(e) - 1, the additive Adams operation scales
e^n by k^n, and the s-numbers are the rescaled coefficients m! [e^m] ch.

The series checks at the bottom pin the two classical identities tying the
multiplicative series (exp(x) - 1)/x to the positive even Bernoulli numbers
and to the Adams-averaged line class.  Both are verified coefficient by
coefficient to a requested order, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import series
from .exact import bernoulli
from .kops import r_virtual_conjugate_minus_one, rho_line
from .polyring import KClass, line_power


class CohClass:
    """Polynomial in the degree-two generator, exact coefficients, no claims."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        self.coeffs = series.fit(coeffs, order)

    def coefficient(self, m: int) -> Fraction:
        if not 0 <= m <= self.order:
            raise IndexError(f"coefficient e^{m} outside order {self.order}")
        return self.coeffs[m]

    def _match(self, other: "CohClass") -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, CohClass):
            self._match(other)
            return CohClass(series.add(self.coeffs, other.coeffs), self.order)
        return NotImplemented

    def __neg__(self):
        return CohClass(series.neg(self.coeffs), self.order)

    def __sub__(self, other):
        if isinstance(other, CohClass):
            return self + (-other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, CohClass):
            self._match(other)
            return CohClass(series.mul(self.coeffs, other.coeffs, self.order), self.order)
        if isinstance(other, (int, Fraction)):
            return CohClass(series.scale(self.coeffs, Fraction(other)), self.order)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, CohClass):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"CohClass({[str(c) for c in self.coeffs]}, order={self.order})"


def ch(f: KClass, order: int | None = None) -> CohClass:
    """Chern character: substitute u -> exp(e) - 1.

    Only orders up to the K-theory truncation are geometrically determined,
    so asking beyond it is an error rather than a silent extrapolation.
    """
    if order is None:
        order = f.truncation
    if order > f.truncation:
        raise ValueError(
            f"order {order} exceeds truncation {f.truncation}; the discarded "
            f"u-powers would contribute"
        )
    return CohClass(series.compose(f.coeffs, series.exp_minus_one(order), order), order)


def psi_H(k: int, c: CohClass) -> CohClass:
    """Adams operation on cohomology: e^n is scaled by k^n."""
    return CohClass(
        [coeff * Fraction(k) ** n for n, coeff in enumerate(c.coeffs)], c.order
    )


def s_eval(m: int, f: KClass) -> Fraction:
    """The m-th additive characteristic number m! [e^m] ch(f)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return factorial(m) * ch(f, m).coefficient(m)


def bh(order: int) -> CohClass:
    """The multiplicative series (exp(x) - 1)/x as a polynomial through x^order."""
    return CohClass([Fraction(1, factorial(m + 1)) for m in range(order + 1)], order)


@dataclass(frozen=True)
class SeriesCheck:
    order: int
    passed: bool
    first_mismatch: int | None
    lhs: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]


def _compare(order: int, lhs: tuple, rhs: tuple) -> SeriesCheck:
    mismatch = next((i for i in range(order + 1) if lhs[i] != rhs[i]), None)
    return SeriesCheck(order, mismatch is None, mismatch, tuple(lhs), tuple(rhs))


def bh_log_identity_check(order: int) -> SeriesCheck:
    """log((exp(x)-1)/x) against x/2 + sum of (-1)^(n-1) B_n/(2n) x^(2n)/(2n)!.

    Order must be even and at least two so the comparison window closes on
    a complete Bernoulli term.
    """
    if order < 2 or order % 2 != 0:
        raise ValueError("order must be an even integer >= 2")
    lhs = series.log1(bh(order).coeffs, order)
    rhs = [Fraction(0)] * (order + 1)
    rhs[1] = Fraction(1, 2)
    for n in range(1, order // 2 + 1):
        rhs[2 * n] = (
            Fraction((-1) ** (n - 1))
            * bernoulli(n)
            / (2 * n)
            / factorial(2 * n)
        )
    return _compare(order, tuple(lhs), tuple(rhs))


def bh_psi_relation_check(k: int, order: int) -> SeriesCheck:
    """psi^k on the multiplicative series equals ch of the averaged line
    class times the series; both sides land on (exp(kx)-1)/(kx)."""
    if k < 1:
        raise ValueError("k must be positive")
    if order < 1:
        raise ValueError("order must be positive")
    lhs = psi_H(k, bh(order))
    rhs = ch(rho_line(k, 1, order), order) * bh(order)
    return _compare(order, lhs.coeffs, rhs.coeffs)


def eigenvalue_closed_form(k: int, n: int) -> Fraction:
    """(-1)^(n-1) (k^(2n) - 1) B_n / (2n), exactly."""
    if n < 1:
        raise ValueError("n must be positive")
    return Fraction((-1) ** (n - 1)) * (Fraction(k) ** (2 * n) - 1) * bernoulli(n) / (2 * n)


def rk_eigenvalue(p: int, k: int, n: int, truncation: int | None = None) -> Fraction:
    """Eigenvalue of the conjugate-average class on the (2n-1)-st s-number,
    computed through the series route only.

    Ratio of s(2n-1) of the reduced average class to s(2n-1) of the reduced
    conjugate line.  The denominator must come out as (-1)^(2n-1); that is
    a sanity check on the normalization, not on the theorem.  Comparison
    with the closed form is the caller's job.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if truncation is None:
        truncation = 2 * n + 2
    m = 2 * n - 1
    if truncation < m:
        raise ValueError(f"truncation {truncation} too small for s_{m}")
    numerator = s_eval(m, r_virtual_conjugate_minus_one(k, truncation))
    denominator = s_eval(m, line_power(-1, truncation) - 1)
    if denominator != (-1) ** m:
        raise ArithmeticError(
            f"normalizing s-number came out {denominator}, expected {(-1) ** m}"
        )
    return numerator / denominator


def kappa_sign_shadow(n: int, truncation: int | None = None) -> Fraction:
    """Sign relating the s-numbers of a reduced line and its conjugate at
    weight n: s(n, conjugate) / s(n, line), computed from the series.

    Comes out (-1)^n.  The fiber-integrated class of weight n - 1 is the
    fiber integral of the n-th power of the degree-two generator, so under
    fiberwise conjugation it picks up exactly this sign; odd n therefore
    flips the even-weight integrated class.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if truncation is None:
        truncation = n + 2
    conj = s_eval(n, line_power(-1, truncation) - 1)
    line = s_eval(n, line_power(1, truncation) - 1)
    return conj / line
