"""Closed-form Korselt sets of pq built from divisor witnesses.

Four witness families are generated from (d_p | p-1, d_q | q-1, eps = +-1).
The regime of q relative to 2p, 3p, 4p decides which families apply and which
sporadic extra values join them. Every candidate is run through
``check_base`` before it is admitted, so the output is sound by construction;
completeness is what the oracle comparison tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .arith import divides, divisor_set
from .core import (
    DivisorWitness,
    KorseltEntry,
    KorseltSet,
    SemiprimePair,
    check_pair_base,
)

__all__ = [
    "Q_GT_4P",
    "Q_IN_3P_4P",
    "Q_IN_2P_3P",
    "Q_LT_2P",
    "REGIME_LABELS",
    "RegimeError",
    "RegimeTag",
    "FamilyElement",
    "gen_A",
    "gen_B",
    "gen_C",
    "gen_D",
    "regime",
    "extras",
    "closed_form_q_ks",
    "closed_form_z_ks",
]

Q_GT_4P = "Q_GT_4P"
Q_IN_3P_4P = "Q_IN_3P_4P"
Q_IN_2P_3P = "Q_IN_2P_3P"
Q_LT_2P = "Q_LT_2P"

REGIME_LABELS = {
    Q_GT_4P: "q>4p",
    Q_IN_3P_4P: "3p<q<4p",
    Q_IN_2P_3P: "2p<q<3p",
    Q_LT_2P: "q<2p",
}


class RegimeError(ValueError):
    """Operation undefined for this regime."""


@dataclass(frozen=True)
class RegimeTag:
    regime: str
    flags: tuple = ()

    @property
    def label(self) -> str:
        return REGIME_LABELS[self.regime]

    def flag(self, key: str) -> bool:
        return dict(self.flags).get(key, False)

    def as_dict(self) -> dict:
        return {"regime": self.regime, "label": self.label, "flags": dict(self.flags)}


@dataclass(frozen=True)
class FamilyElement:
    alpha: Fraction
    family: str
    witness: Optional[DivisorWitness]
    raw_num: int
    raw_den: int


def _witnesses(pair: SemiprimePair):
    dps = divisor_set(pair.p - 1).divisors
    dqs = divisor_set(pair.q - 1).divisors
    for d_p in dps:
        for d_q in dqs:
            for eps in (-1, 1):
                yield d_p, d_q, eps


def _raw_A(p, q, d_p, d_q, eps):
    return q * d_q + eps * p * d_p, d_q + eps * d_p


def _raw_B(p, q, d_p, d_q, eps):
    return (p * d_p - eps * d_q) * q, q * d_p - eps * d_q


def _raw_C(p, q, d_p, d_q, eps):
    return (q * d_q + eps * d_p) * p, p * d_q + eps * d_p


def _raw_D(p, q, d_p, d_q, eps):
    return (d_p + eps * d_q) * p * q, q * d_p + eps * p * d_q


RAW_FORMULAS: dict[str, Callable] = {"A": _raw_A, "B": _raw_B, "C": _raw_C, "D": _raw_D}


def _side_A(p, q, d_p, d_q, eps):
    c = d_q + eps * d_p
    return c != 0 and divides(q - p, c)


def _side_B(p, q, d_p, d_q, eps):
    return divides(q - p, q * d_p - eps * d_q) and q - p <= p * d_p - eps * d_q


def _side_B_strict(p, q, d_p, d_q, eps):
    return divides(q - p, q * d_p - eps * d_q) and q - p < p * d_p - eps * d_q


def _side_C(p, q, d_p, d_q, eps):
    return divides(q - p, p * d_q + eps * d_p)


def _side_D(p, q, d_p, d_q, eps):
    c = d_p + eps * d_q
    return c != 0 and divides(q - p, c)


_SIDE_CONDITIONS = {"A": _side_A, "B": _side_B, "C": _side_C, "D": _side_D}


def _generate(pair: SemiprimePair, family: str, side=None) -> list[FamilyElement]:
    p, q = pair.p, pair.q
    side = side or _SIDE_CONDITIONS[family]
    raw = RAW_FORMULAS[family]
    out = []
    for d_p, d_q, eps in _witnesses(pair):
        if not side(p, q, d_p, d_q, eps):
            continue
        num, den = raw(p, q, d_p, d_q, eps)
        if den == 0:
            continue
        alpha = Fraction(num, den)
        if not check_pair_base(pair, alpha):
            continue
        out.append(FamilyElement(alpha, family, DivisorWitness(d_p, d_q, eps), num, den))
    return out


def gen_A(pair: SemiprimePair) -> list[FamilyElement]:
    """(q d_q + eps p d_p)/(d_q + eps d_p), needing (q-p) | (d_q + eps d_p) != 0."""
    return _generate(pair, "A")


def gen_B(pair: SemiprimePair, strict: bool = False) -> list[FamilyElement]:
    """(p d_p - eps d_q) q/(q d_p - eps d_q), needing (q-p) | (q d_p - eps d_q).

    The reduced numerator over q is (p d_p - eps d_q)/(q-p), which must be a
    positive integer, so the default bound is q-p <= p d_p - eps d_q. With
    ``strict=True`` the bound is q-p < p d_p - eps d_q; that variant loses
    every base of the form q/k and exists only for comparison.
    """
    return _generate(pair, "B", _side_B_strict if strict else None)


def gen_C(pair: SemiprimePair) -> list[FamilyElement]:
    """(q d_q + eps d_p) p/(p d_q + eps d_p), needing (q-p) | (p d_q + eps d_p)."""
    return _generate(pair, "C")


def gen_D(pair: SemiprimePair) -> list[FamilyElement]:
    """(d_p + eps d_q) pq/(q d_p + eps p d_q), needing (q-p) | (d_p + eps d_q) != 0.

    Empty whenever q > 4p - 3.
    """
    out = _generate(pair, "D")
    if pair.q > 4 * pair.p - 3:
        assert not out, f"family D nonempty for {pair} with q > 4p-3"
    return out


GENERATORS = {"A": gen_A, "B": gen_B, "C": gen_C, "D": gen_D}


def regime(pair: SemiprimePair) -> RegimeTag:
    p, q, s = pair.p, pair.q, pair.s
    if q > 4 * p:
        return RegimeTag(Q_GT_4P)
    if q > 3 * p:
        return RegimeTag(Q_IN_3P_4P, (("is_q_eq_4p_minus_3", q == 4 * p - 3),))
    if q > 2 * p:
        return RegimeTag(
            Q_IN_2P_3P,
            (
                ("s_plus_1_divides_q_minus_1", (q - 1) % (s + 1) == 0),
                ("s_eq_p_minus_2_or_p_minus_5_over_4", s == p - 2 or 4 * s == p - 5),
            ),
        )
    return RegimeTag(
        Q_LT_2P,
        (
            ("q_eq_5", q == 5),
            ("s_eq_half_p_plus_1", p > 2 and 2 * s == p + 1),
            ("s_eq_p_minus_1", s == p - 1),
            ("p_minus_s_divides_2s_minus_1", divides(p - s, 2 * s - 1)),
            ("p_minus_s_divides_s_minus_1", divides(p - s, s - 1)),
        ),
    )


def extras(pair: SemiprimePair, tag: Optional[RegimeTag] = None) -> list[tuple[int, int]]:
    """Sporadic values added on top of the witness families, as raw (num, den)."""
    p, q, s = pair.p, pair.q, pair.s
    tag = tag or regime(pair)
    if tag.regime == Q_GT_4P:
        return [(p + q - 1, 1)]
    if tag.regime == Q_IN_3P_4P:
        if tag.flag("is_q_eq_4p_minus_3"):
            return [(q - p + 1, 1), (p + q - 1, 1), (p * q, 2 * p - 1)]
        return [(p + q - 1, 1)]
    if tag.regime == Q_IN_2P_3P:
        if not tag.flag("s_plus_1_divides_q_minus_1"):
            return [(p + q - 1, 1)]
        out = [(q - p + 1, 1), (p + q - 1, 1), (2 * p + q - 1, 2), (p * q, 2 * p - 1), (2 * p * q, q + 1)]
        if tag.flag("s_eq_p_minus_2_or_p_minus_5_over_4"):
            out += [(3 * q - 5 * p + 3, 1), (2 * p * q, 3 * p - 1)]
        return out
    # q < 2p: first matching subcase wins
    if tag.flag("q_eq_5"):
        return [(q, 2), (q, 3)]
    if tag.flag("s_eq_half_p_plus_1"):
        return [(q, 3)]
    if tag.flag("s_eq_p_minus_1"):
        return [((s - 1) * q, q - 2), (q, 2)]
    if tag.flag("p_minus_s_divides_2s_minus_1"):
        return [(q, 2)]
    if tag.flag("p_minus_s_divides_s_minus_1"):
        return [((s - 1) * q, q - 2)]
    return []


def _families_for(tag: RegimeTag) -> str:
    return "ABCD" if tag.regime == Q_LT_2P else "BC"


def closed_form_q_ks(pair: SemiprimePair) -> KorseltSet:
    tag = regime(pair)
    members: list[FamilyElement] = []
    for fam in _families_for(tag):
        members.extend(GENERATORS[fam](pair))
    for num, den in extras(pair, tag):
        alpha = Fraction(num, den)
        if check_pair_base(pair, alpha):
            members.append(FamilyElement(alpha, "EXTRA", None, num, den))
    return _merge(pair, members)


def _merge(pair: SemiprimePair, members: Iterable[FamilyElement]) -> KorseltSet:
    families: dict[Fraction, set] = {}
    sources: dict[Fraction, set] = {}
    for m in members:
        families.setdefault(m.alpha, set()).add(m.family)
        src = sources.setdefault(m.alpha, set())
        if m.witness is not None:
            src.add((m.family, m.witness))
    elements = tuple(
        KorseltEntry(
            a,
            frozenset(families[a]),
            tuple(sorted({w for _, w in sources[a]})),
            tuple(sorted(sources[a])),
        )
        for a in sorted(families)
    )
    return KorseltSet(pair, elements)


def closed_form_z_ks(pair: SemiprimePair) -> list[int]:
    """Integer Korselt set of pq for q < 2p."""
    p, q, s = pair.p, pair.q, pair.s
    if q > 2 * p:
        raise RegimeError(f"integer closed form needs q < 2p; got {pair}")
    found = set()
    for d_q in divisor_set(q - 1).divisors:
        for eps in (-1, 1):
            c = s - eps * d_q
            if c != 0 and divides(c, p - 1):
                found.add(p + eps * d_q)
    if divides(p - s, p - 1):
        found.add(2 * p)
    return sorted(a for a in found if check_pair_base(pair, a))
