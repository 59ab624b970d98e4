"""Exact integer and rational primitives.

Everything here is exact. Python integers never overflow, so the width
limits below exist to keep the deterministic primality bases valid and to
keep the compiled kernels inside 64-bit arithmetic; they are checked, not
assumed.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import numpy as np

__all__ = [
    "MAX_PRIME",
    "MAX_WIDE",
    "RangeError",
    "BudgetError",
    "DivisorSet",
    "divides",
    "is_prime",
    "divisor_set",
    "divisor_set_of_product",
    "make_rational",
    "parse_rational",
    "format_rational",
    "spf_sieve",
    "factor_with_sieve",
    "prime_divisors",
    "primes_up_to",
]

# Admissible primes. Every intermediate of the pq computations is bounded by
# pq(p+q), which stays below 2**95 under this cap.
MAX_PRIME = 2**31 - 1
# is_prime is deterministic below 3.3e24 with the first 13 prime bases;
# divisor enumeration is restricted to 63-bit inputs.
MAX_WIDE = 2**63 - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981

# 4 bytes per sieve entry.
DEFAULT_SIEVE_BUDGET = 512 * 1024 * 1024


class RangeError(ValueError):
    """Input exceeds the supported integer width."""


class BudgetError(RuntimeError):
    """A configured memory or iteration budget would be exceeded."""


def divides(d: int, x: int) -> bool:
    """Sign-insensitive divisibility; zero divides only zero."""
    if d == 0:
        return x == 0
    return x % d == 0


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 0:
        raise ValueError(f"is_prime expects a nonnegative integer, got {n}")
    if n >= _MR_LIMIT:
        raise RangeError(f"{n} exceeds the deterministic primality range")
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class DivisorSet:
    """Ascending positive divisors of ``of``."""

    __slots__ = ("of", "divisors")

    def __init__(self, of: int, divisors: tuple[int, ...]):
        self.of = of
        self.divisors = divisors

    def __iter__(self):
        return iter(self.divisors)

    def __len__(self):
        return len(self.divisors)

    def __contains__(self, d):
        return d in self.divisors

    def __eq__(self, other):
        if isinstance(other, DivisorSet):
            return self.of == other.of and self.divisors == other.divisors
        return NotImplemented

    def __hash__(self):
        return hash((self.of, self.divisors))

    def __repr__(self):
        return f"DivisorSet({self.of}, {list(self.divisors)})"


def _trial_factor(m: int) -> list[tuple[int, int]]:
    out = []
    for f in (2, 3):
        e = 0
        while m % f == 0:
            m //= f
            e += 1
        if e:
            out.append((f, e))
    f = 5
    # a prime cofactor ends the scan early
    cofactor_prime = m > 1 and is_prime(m)
    while f * f <= m and not cofactor_prime:
        for g in (f, f + 2):
            e = 0
            while m % g == 0:
                m //= g
                e += 1
            if e:
                out.append((g, e))
                cofactor_prime = m > 1 and is_prime(m)
        f += 6
    if m > 1:
        out.append((m, 1))
    return out


def _expand(factors: dict[int, int]) -> tuple[int, ...]:
    divs = [1]
    for prime, exp in factors.items():
        divs = [d * prime**k for d in divs for k in range(exp + 1)]
    return tuple(sorted(divs))


def divisor_set(m: int) -> DivisorSet:
    if m < 1:
        raise ValueError(f"divisor_set expects m >= 1, got {m}")
    if m > MAX_WIDE:
        raise RangeError(f"{m} exceeds the divisor-enumeration width")
    return DivisorSet(m, _expand(dict(_trial_factor(m))))


def divisor_set_of_product(*parts: int) -> DivisorSet:
    """Divisors of the product of ``parts``, factoring each part separately.

    Trial division then only has to reach the square root of the largest
    part, e.g. q-1 rather than p(q-1).
    """
    factors: dict[int, int] = {}
    m = 1
    for part in parts:
        if part < 1:
            raise ValueError(f"divisor_set_of_product expects positive parts, got {part}")
        m *= part
        for prime, exp in _trial_factor(part):
            factors[prime] = factors.get(prime, 0) + exp
    if m > MAX_WIDE:
        raise RangeError(f"{m} exceeds the divisor-enumeration width")
    return DivisorSet(m, _expand(factors))


def make_rational(num: int, den: int) -> Fraction:
    """Canonical fraction num/den; raises ZeroDivisionError when den == 0."""
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` into an exact fraction (no decimals)."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as a rational 'a/b' or integer") from None


def format_rational(alpha: Fraction) -> str:
    if alpha.denominator == 1:
        return str(alpha.numerator)
    return f"{alpha.numerator}/{alpha.denominator}"


def spf_sieve(limit: int, budget: int = DEFAULT_SIEVE_BUDGET) -> np.ndarray:
    """Smallest-prime-factor table; ``table[n]`` is spf(n) for 2 <= n <= limit.

    Entries 0 and 1 are 0.
    """
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    if limit >= 2**32:
        raise RangeError(f"sieve limit {limit} exceeds 32-bit table entries")
    nbytes = (limit + 1) * 4
    if nbytes > budget:
        raise BudgetError(f"sieve up to {limit} needs {nbytes} bytes; budget is {budget}")
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = spf == 0
    rest[:2] = False
    spf[rest] = np.nonzero(rest)[0].astype(np.uint32)
    return spf


def factor_with_sieve(n: int, spf: np.ndarray) -> list[int]:
    """Prime factors of n with multiplicity, ascending."""
    if n < 1 or n >= len(spf):
        raise RangeError(f"{n} is outside the sieve range [1, {len(spf) - 1}]")
    out = []
    while n > 1:
        f = int(spf[n])
        out.append(f)
        n //= f
    return out


def prime_divisors(n: int, spf: np.ndarray | None = None) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    if spf is not None and n < len(spf):
        return sorted(set(factor_with_sieve(n, spf)))
    if n < 1 or n > MAX_WIDE:
        raise RangeError(f"cannot factor {n}")
    return [f for f, _ in _trial_factor(n)]


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    spf = spf_sieve(limit)
    return [int(x) for x in np.nonzero(spf == np.arange(limit + 1))[0] if x >= 2]
