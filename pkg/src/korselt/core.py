"""Definitional Korselt predicate and brute-force oracles for N = pq."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import _backend
from .arith import MAX_PRIME, BudgetError, RangeError, divides, divisor_set_of_product, is_prime

__all__ = [
    "FAMILIES",
    "PairError",
    "FactorizationError",
    "SemiprimePair",
    "PDecomposition",
    "DivisorWitness",
    "KorseltEntry",
    "KorseltSet",
    "check_base",
    "check_pair_base",
    "raw_divisibility",
    "oracle_q_ks",
    "oracle_z_ks",
    "naive_box_scan",
    "box_bounds",
    "korselt_weight",
    "decompose_by_p",
]

FAMILIES = ("A", "B", "C", "D", "EXTRA")

DEFAULT_BOX_CAP = 500_000_000


class PairError(ValueError):
    """(p, q) is not a valid pair of primes p < q."""


class FactorizationError(ValueError):
    """A listed prime does not divide n."""


@dataclass(frozen=True)
class SemiprimePair:
    p: int
    q: int
    n: int = field(init=False)
    i: int = field(init=False)
    s: int = field(init=False)

    def __post_init__(self):
        p, q = self.p, self.q
        for x in (p, q):
            if x > MAX_PRIME:
                raise RangeError(f"{x} exceeds the admissible prime cap {MAX_PRIME}")
            if not is_prime(x):
                raise PairError(f"{x} is not prime")
        if p >= q:
            raise PairError(f"need p < q, got p={p}, q={q}")
        object.__setattr__(self, "n", p * q)
        object.__setattr__(self, "i", q // p)
        object.__setattr__(self, "s", q % p)

    def __str__(self):
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class PDecomposition:
    j: int
    t: int


@dataclass(frozen=True, order=True)
class DivisorWitness:
    d_p: int
    d_q: int
    eps: int

    def as_dict(self) -> dict:
        return {"dp": self.d_p, "dq": self.d_q, "eps": self.eps}


@dataclass(frozen=True)
class KorseltEntry:
    alpha: Fraction
    families: frozenset = frozenset()
    witnesses: tuple = ()
    # (family, witness) pairs; witnesses is their deduplicated projection
    sources: tuple = ()


@dataclass(frozen=True)
class KorseltSet:
    pair: SemiprimePair
    elements: tuple

    @classmethod
    def from_values(cls, pair: SemiprimePair, values: Iterable[Fraction]) -> "KorseltSet":
        return cls(pair, tuple(KorseltEntry(a) for a in sorted(set(values))))

    def values(self) -> list[Fraction]:
        return [e.alpha for e in self.elements]

    def integers(self) -> list[int]:
        return [int(a) for a in self.values() if a.denominator == 1]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, alpha):
        alpha = Fraction(alpha)
        return any(e.alpha == alpha for e in self.elements)


def raw_divisibility(n: int, prime_divisors: Iterable[int], num: int, den: int) -> bool:
    """The divisibility conditions on an arbitrary (possibly non-reduced) representation."""
    target = den * n - num
    return all(divides(den * r - num, target) for r in prime_divisors)


def check_base(n: int, prime_divisors: Iterable[int], alpha) -> bool:
    """True iff ``alpha`` is a Korselt base of ``n``.

    ``prime_divisors`` must be the distinct primes dividing ``n``. The values
    0 and ``n`` are never bases.
    """
    alpha = Fraction(alpha)
    prime_divisors = tuple(prime_divisors)
    if not prime_divisors:
        raise FactorizationError(f"no prime divisors given for {n}")
    for r in prime_divisors:
        if r < 2 or n % r:
            raise FactorizationError(f"{r} is not a prime divisor of {n}")
    if alpha == 0 or alpha == n:
        return False
    return raw_divisibility(n, prime_divisors, alpha.numerator, alpha.denominator)


def check_pair_base(pair: SemiprimePair, alpha) -> bool:
    return check_base(pair.n, (pair.p, pair.q), alpha)


def _signed(divs: Sequence[int]) -> list[int]:
    return [-d for d in reversed(divs)] + list(divs)


def oracle_q_ks(pair: SemiprimePair) -> KorseltSet:
    """Rational Korselt set of pq from the divisor grid.

    For a canonical base a1/a2, D = a2*p - a1 divides (q-1)*gcd(a1, a2*p),
    which divides p(q-1); symmetrically E = a2*q - a1 divides q(p-1). So every
    base appears as some (D, E) drawn from the signed divisors of those two
    numbers, with a2 = (E - D)/(q - p) and a1 = (pE - qD)/(q - p).
    Non-reduced (D, E) solutions are skipped: the reduced base owns its own pair.
    """
    p, q, n = pair.p, pair.q, pair.n
    gap = q - p
    ds = _signed(divisor_set_of_product(p, q - 1).divisors)
    es = _signed(divisor_set_of_product(q, p - 1).divisors)
    by_residue: dict[int, list[int]] = {}
    for e in es:
        by_residue.setdefault(e % gap, []).append(e)
    found = set()
    for d in ds:
        for e in by_residue.get(d % gap, ()):
            if e <= d:
                continue
            den = (e - d) // gap
            num = (p * e - q * d) // gap
            if gcd(num, den) != 1:
                continue
            if num == 0 or num == den * n:
                continue
            if raw_divisibility(n, (p, q), num, den):
                found.add(Fraction(num, den))
    return KorseltSet.from_values(pair, found)


def oracle_z_ks(pair: SemiprimePair) -> list[int]:
    return oracle_q_ks(pair).integers()


def box_bounds(pair: SemiprimePair) -> tuple[int, int]:
    """(max a2, max |a1|) for the brute-force box.

    From |D| <= p(q-1) and |E| <= q(p-1) with a2 = (E-D)/(q-p) and
    a1 = (pE - qD)/(q-p).
    """
    p, q = pair.p, pair.q
    gap = q - p
    max_den = (q * (p - 1) + p * (q - 1)) // gap
    max_num = (p * q * (p + q - 2)) // gap
    return max_den, max_num


def naive_box_scan(pair: SemiprimePair, cap: int = DEFAULT_BOX_CAP) -> KorseltSet:
    """Scan every canonical a1/a2 in the bounding box through the raw definition."""
    max_den, max_num = box_bounds(pair)
    cells = max_den * (2 * max_num + 1)
    if cells > cap:
        raise BudgetError(f"box for {pair} has {cells} cells; cap is {cap}")
    if max_den * pair.n + max_num >= 2**62:
        raise RangeError(f"box for {pair} exceeds 64-bit kernel arithmetic")
    hits = _backend.box_scan(pair.p, pair.q, max_den, max_num)
    return KorseltSet.from_values(pair, (Fraction(a, b) for a, b in hits))


def korselt_weight(kset: KorseltSet) -> int:
    return len(kset.elements)


def decompose_by_p(alpha, pair: SemiprimePair) -> PDecomposition:
    """Split the reduced numerator as j*p + t with 0 <= t < p."""
    j, t = divmod(Fraction(alpha).numerator, pair.p)
    return PDecomposition(j, t)
