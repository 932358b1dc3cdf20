"""Mod-p homology operations at the level needed for one disproof.

The homology of BU mod an odd prime carries operations Q^j whose leading
behaviour on the standard polynomial generators a_n is a signed binomial
coefficient times a higher generator, plus decomposables that nobody here
ever needs to know: the primitive classes s_m kill decomposables, so a
leading term with an explicit "decomposables unknown" marker is enough to
evaluate every pairing this package computes.

The payoff is akita_counterexample: an exact certificate that the cleared
integral form of the classical odd s-number relation cannot hold.  The
conjugate-side class detects the double operation on the bottom generator
(pairing -1 mod p) while the direct-side class, being a suspension image,
pairs to zero; since the numerator of B_p/2p is a unit mod p, the cleared
identity would force those two pairings to agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .chern import s_eval
from .exact import bernoulli, is_prime, num_denom
from .polyring import line_power


@dataclass(frozen=True)
class AdmissibleWord:
    """An iterated operation word (eps_1, i_1), ..., (eps_k, i_k) acting on a
    class of the given degree; eps marks a Bockstein prefix.

    Instances are produced by enumerators after is_admissible has accepted
    the raw entries; the dataclass itself stores, it does not police.
    """

    entries: tuple[tuple[int, int], ...]
    base_degree: int

    def degree(self, p: int) -> int:
        return word_degree(self.entries, self.base_degree, p)


def word_degree(entries, base_degree: int, p: int) -> int:
    """Total degree: each (eps, i) raises degree by 2i(p-1) - eps."""
    return base_degree + sum(2 * i * (p - 1) - eps for eps, i in entries)


def word_excess(entries, p: int) -> int:
    """2 i_1 minus the degree contribution of the remaining entries."""
    if not entries:
        raise ValueError("excess of the empty word is undefined")
    return 2 * entries[0][1] - sum(
        2 * i * (p - 1) - eps for eps, i in entries[1:]
    )


def is_admissible(entries, base_degree: int, p: int) -> bool:
    """Both admissibility conditions: the adjacent inequality
    i_{j-1} <= p i_j - eps_j and the excess bound
    2 i_1 - sum_{j>=2} (2 i_j (p-1) - eps_j) > base_degree.

    The empty word is admissible (it is the class itself).
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"p = {p} must be an odd prime")
    if base_degree < 0:
        raise ValueError("base_degree must be nonnegative")
    entries = tuple(tuple(entry) for entry in entries)
    for eps, i in entries:
        if eps not in (0, 1):
            raise ValueError(f"epsilon must be 0 or 1, got {eps}")
        if i < 1:
            raise ValueError(f"operation index must be positive, got {i}")
    if not entries:
        return True
    for j in range(1, len(entries)):
        eps_j, i_j = entries[j]
        if entries[j - 1][1] > p * i_j - eps_j:
            return False
    return word_excess(entries, p) > base_degree


@dataclass(frozen=True)
class LeadingHomologyClass:
    """c * a_m plus unspecified decomposables, mod p.

    Pairings with primitive cohomology classes depend only on (m, c): the
    primitives annihilate products, so the unknown tail never contributes.
    """

    prime: int
    generator_index: int
    coefficient: int
    decomposables_unknown: bool = True

    def __post_init__(self) -> None:
        if not 0 <= self.coefficient < self.prime:
            raise ValueError("coefficient must be a reduced residue")

    @property
    def degree(self) -> int:
        return 2 * self.generator_index

    def is_zero_leading_term(self) -> bool:
        return self.coefficient == 0


def q_on_bu(j: int, n: int, p: int) -> LeadingHomologyClass:
    """Leading term of Q^j on the n-th standard generator:
    (-1)^(j+n-1) binom(j-1, n) a_{n + j(p-1)} mod p."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"p = {p} must be an odd prime")
    if j < 1 or n < 1:
        raise ValueError("j and n must be positive")
    coefficient = ((-1) ** (j + n - 1) * comb(j - 1, n)) % p
    return LeadingHomologyClass(p, n + j * (p - 1), coefficient)


def pair_primitive_s(m: int, c: LeadingHomologyClass) -> int:
    """<s_m, c> mod p: zero unless the generator index is m, and then the
    coefficient times the duality sign.

    The sign is not an assumption: s_m of the reduced conjugate line is
    computed through the character route, and its weight-m number (-1)^m is
    what the generator convention pairs against.  Decomposables die on the
    primitive class, so the leading term decides the value.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if c.generator_index != m:
        return 0
    duality = s_eval(m, line_power(-1, m) - 1)
    if duality.denominator != 1:
        raise ArithmeticError("duality sign must be an integer")
    return (c.coefficient * duality.numerator) % c.prime


def kappa_pairing(m: int, entries, base_index: int) -> int:
    """Pairing of the fiber-integral (suspension-image) class of weight m
    with a nonempty operation word applied to a_{base_index}: always zero.

    Suspension images annihilate every class of the form Q^i(x), since the
    operation can be pushed up the loop tower until its degree condition
    kills it.  The function exists so a certificate can cite both sides of
    the comparison with the same call discipline.
    """
    entries = tuple(tuple(entry) for entry in entries)
    if not entries:
        raise ValueError("the word must be nonempty; the empty word pairs "
                         "through the ordinary generator pairing instead")
    if base_index < 1:
        raise ValueError("base_index must be positive")
    if m < 1:
        raise ValueError("m must be positive")
    return 0


@dataclass(frozen=True)
class Certificate:
    """Exact record of the disproof at one odd prime.

    s_pairing is the nonzero pairing of the conjugate-side class of weight
    2p-1 with the double operation on the bottom generator; kappa_side is
    the vanishing pairing of the direct-side class with the same element.
    num/denom are the reduced numerator and denominator of B_p/(2p);
    num_residue being a unit mod p is what upgrades the distinct pairings
    into a refutation of the cleared identity.
    """

    prime: int
    s_pairing: int
    kappa_side: int
    num: int
    denom: int
    num_residue: int
    cleared_identity_ok: bool
    distinct_mod_p: bool
    genus_threshold: int
    verdict: str
    notes: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return (
            self.s_pairing % self.prime != 0
            and self.kappa_side == 0
            and self.num_residue % self.prime != 0
            and self.cleared_identity_ok
            and self.distinct_mod_p
            and self.verdict == "conjecture fails mod p"
        )

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "s_pairing": self.s_pairing,
            "kappa_side": self.kappa_side,
            "num": self.num,
            "denom": self.denom,
            "num_residue": self.num_residue,
            "cleared_identity_ok": self.cleared_identity_ok,
            "distinct_mod_p": self.distinct_mod_p,
            "genus_threshold": self.genus_threshold,
            "verdict": self.verdict,
            "notes": list(self.notes),
            "passed": self.passed,
        }


def akita_counterexample(p: int) -> Certificate:
    """Assemble the refutation certificate at an odd prime p.

    The weight is m = 2p - 1 and the test class is Q^2(a_1), whose leading
    term is +1 * a_{2p-1}.  The conjugate-side pairing is (-1)^(2p-1) = -1
    mod p; the direct side pairs to zero.  If the cleared identity held,
    reducing mod p and cancelling the unit numerator of B_p/(2p) would
    force the two sides to agree on this class; they do not.
    """
    if p == 2:
        raise ValueError("the comparison machinery needs an odd prime")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    m = 2 * p - 1
    test_class = q_on_bu(2, 1, p)
    s_pairing = pair_primitive_s(m, test_class)
    kappa_side = kappa_pairing(m, ((0, 2),), 1)
    num, denom = num_denom(p)
    num_residue = num % p
    cleared_identity_ok = Fraction(num, denom) == bernoulli(p) / (2 * p)
    # the forced congruence would equate kappa_side with minus s_pairing
    distinct_mod_p = (kappa_side - (-s_pairing)) % p != 0
    genus_threshold = 8 * p - 3
    notes = (
        f"test class: double operation on the bottom generator, leading "
        f"term {test_class.coefficient} * a_{test_class.generator_index}",
        f"conjugate-side pairing at weight {m}: {s_pairing} mod {p}",
        "direct-side class is a suspension image, so it annihilates "
        "operation words: pairing 0",
        f"numerator {num} of the weight-{p} Bernoulli ratio is a unit "
        f"mod {p} (residue {num_residue}), so the cleared identity would "
        f"force the two pairings to agree mod {p}",
        f"genus threshold {genus_threshold} is reported, not derived here",
    )
    return Certificate(
        prime=p,
        s_pairing=s_pairing,
        kappa_side=kappa_side,
        num=num,
        denom=denom,
        num_residue=num_residue,
        cleared_identity_ok=cleared_identity_ok,
        distinct_mod_p=distinct_mod_p,
        genus_threshold=genus_threshold,
        verdict="conjecture fails mod p",
        notes=notes,
    )
