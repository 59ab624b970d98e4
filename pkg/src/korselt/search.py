"""Fixed-base search: every M up to a limit that admits a given Korselt base."""

from __future__ import annotations

import enum
from fractions import Fraction

from . import _backend
from .arith import DEFAULT_SIEVE_BUDGET, RangeError, spf_sieve

__all__ = ["SearchFilter", "b_korselt_set", "b_korselt_weight"]


class SearchFilter(enum.IntEnum):
    ALL = 0
    COMPOSITE = 1
    SQUAREFREE_COMPOSITE = 2
    SEMIPRIME = 3

    @classmethod
    def parse(cls, text: str) -> "SearchFilter":
        key = text.strip().lower()
        aliases = {
            "all": cls.ALL,
            "composite": cls.COMPOSITE,
            "squarefree": cls.SQUAREFREE_COMPOSITE,
            "squarefree_composite": cls.SQUAREFREE_COMPOSITE,
            "semiprime": cls.SEMIPRIME,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown filter {text!r}; choose from all, composite, squarefree, semiprime") from None


def b_korselt_set(
    alpha,
    limit: int,
    filter: SearchFilter = SearchFilter.COMPOSITE,
    budget: int = DEFAULT_SIEVE_BUDGET,
) -> list[int]:
    """All M in [2, limit] passing ``filter`` for which ``alpha`` is a Korselt base.

    Prime divisors are taken without multiplicity, so non-squarefree M are
    judged by the literal definition unless the filter excludes them.
    """
    alpha = Fraction(alpha)
    if alpha == 0:
        raise ValueError("0 is never a Korselt base")
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    num, den = alpha.numerator, alpha.denominator
    if den * limit + abs(num) >= 2**62:
        raise RangeError(f"base {alpha} with limit {limit} exceeds 64-bit kernel arithmetic")
    spf = spf_sieve(limit, budget)
    return _backend.base_scan(spf, num, den, limit, int(SearchFilter(filter)))


def b_korselt_weight(
    alpha,
    limit: int,
    filter: SearchFilter = SearchFilter.COMPOSITE,
    budget: int = DEFAULT_SIEVE_BUDGET,
) -> int:
    return len(b_korselt_set(alpha, limit, filter, budget))
