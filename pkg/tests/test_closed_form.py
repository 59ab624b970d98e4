from fractions import Fraction

import pytest

from korselt.closed_form import (
    Q_GT_4P,
    Q_IN_2P_3P,
    Q_IN_3P_4P,
    Q_LT_2P,
    RAW_FORMULAS,
    _SIDE_CONDITIONS,
    RegimeError,
    _witnesses,
    closed_form_q_ks,
    closed_form_z_ks,
    extras,
    gen_A,
    gen_B,
    gen_C,
    gen_D,
    regime,
)
from korselt.core import DivisorWitness, SemiprimePair, check_pair_base, oracle_q_ks
from korselt.report import prime_pairs

PAIRS_60 = prime_pairs(60)


def by_witness(elements, d_p, d_q, eps):
    w = DivisorWitness(d_p, d_q, eps)
    return [e for e in elements if e.witness == w]


def test_gen_A_examples():
    (six,) = by_witness(gen_A(SemiprimePair(5, 7)), 1, 1, 1)
    assert six.alpha == 6 and (six.raw_num, six.raw_den) == (12, 2)
    (e,) = by_witness(gen_A(SemiprimePair(2, 3)), 1, 1, 1)
    assert e.alpha == Fraction(5, 2)


def test_gen_A_keeps_four_for_2_3():
    # raw (6-2)/(2-1) = 4: 2-4 = -2 and 3-4 = -1 both divide 6-4 = 2
    pair = SemiprimePair(2, 3)
    assert RAW_FORMULAS["A"](2, 3, 1, 2, -1) == (4, 1)
    (e,) = by_witness(gen_A(pair), 1, 2, -1)
    assert e.alpha == 4
    assert 4 in oracle_q_ks(pair)


@pytest.mark.parametrize("pair", PAIRS_60, ids=str)
def test_filter_only_removes_excluded_values(pair):
    # Before filtering, A/B/C candidates are already bases; D can hit N and
    # the q<2p extra (s-1)q/(q-2) is 0 when s = 1.
    for fam in "ABCD":
        for d_p, d_q, eps in _witnesses(pair):
            if not _SIDE_CONDITIONS[fam](pair.p, pair.q, d_p, d_q, eps):
                continue
            num, den = RAW_FORMULAS[fam](pair.p, pair.q, d_p, d_q, eps)
            alpha = Fraction(num, den)
            if not check_pair_base(pair, alpha):
                assert fam == "D" and alpha == pair.n
    for num, den in extras(pair):
        alpha = Fraction(num, den)
        if not check_pair_base(pair, alpha):
            assert alpha == 0


def test_gen_B_known_value():
    (e,) = by_witness(gen_B(SemiprimePair(2, 3)), 1, 1, -1)
    assert e.alpha == Fraction(9, 4)


def test_gen_B_strict_bound_drops_q_over_2():
    pair = SemiprimePair(2, 3)
    assert by_witness(gen_B(pair, strict=True), 1, 1, 1) == []
    (e,) = by_witness(gen_B(pair), 1, 1, 1)
    assert e.alpha == Fraction(3, 2)


def test_gen_B_strict_misses_bases_that_default_finds():
    # (2,5): 5/2 is a base, reachable in B only at equality q-p = p d_p - eps d_q
    pair = SemiprimePair(2, 5)
    assert check_pair_base(pair, Fraction(5, 2))
    assert Fraction(5, 2) in {e.alpha for e in gen_B(pair)}
    assert Fraction(5, 2) not in {e.alpha for e in gen_B(pair, strict=True)}


def test_gen_C_examples():
    pair = SemiprimePair(2, 3)
    (a,) = by_witness(gen_C(pair), 1, 2, 1)
    (b,) = by_witness(gen_C(pair), 1, 2, -1)
    assert a.alpha == Fraction(14, 5) and b.alpha == Fraction(10, 3)


def test_gen_C_keeps_four_for_2_3():
    pair = SemiprimePair(2, 3)
    assert RAW_FORMULAS["C"](2, 3, 1, 1, -1) == (4, 1)
    (e,) = by_witness(gen_C(pair), 1, 1, -1)
    assert e.alpha == 4


def test_gen_D_examples():
    pair = SemiprimePair(2, 3)
    (e,) = by_witness(gen_D(pair), 1, 1, 1)
    assert e.alpha == Fraction(12, 5)
    # raw (1-2)*6/(3-4) = 6 = N is excluded
    num, den = RAW_FORMULAS["D"](2, 3, 1, 2, -1)
    assert Fraction(num, den) == 6
    assert by_witness(gen_D(pair), 1, 2, -1) == []
    assert gen_D(SemiprimePair(2, 11)) == []


@pytest.mark.parametrize("pair", [p for p in prime_pairs(120) if p.q > 4 * p.p - 3], ids=str)
def test_gen_D_empty_above_4p_minus_3(pair):
    assert gen_D(pair) == []


@pytest.mark.parametrize("gen", [gen_A, gen_B, gen_C, gen_D])
@pytest.mark.parametrize("pair", PAIRS_60, ids=str)
def test_generators_sound_bounded_and_reproducible(gen, pair):
    for e in gen(pair):
        assert check_pair_base(pair, e.alpha)
        assert 0 < e.alpha <= pair.p + pair.q - 1
        w = e.witness
        num, den = RAW_FORMULAS[e.family](pair.p, pair.q, w.d_p, w.d_q, w.eps)
        assert (num, den) == (e.raw_num, e.raw_den)
        assert Fraction(num, den) == e.alpha
        assert (pair.p - 1) % w.d_p == 0 and (pair.q - 1) % w.d_q == 0


def test_regime_examples():
    assert regime(SemiprimePair(2, 11)).regime == Q_GT_4P
    tag = regime(SemiprimePair(5, 17))
    assert tag.regime == Q_IN_3P_4P and tag.flag("is_q_eq_4p_minus_3")
    tag = regime(SemiprimePair(3, 5))
    assert tag.regime == Q_LT_2P and tag.flag("q_eq_5")
    assert regime(SemiprimePair(2, 5)).regime == Q_IN_2P_3P
    assert regime(SemiprimePair(2, 3)).flag("s_eq_p_minus_1")


@pytest.mark.parametrize("pair", prime_pairs(200), ids=str)
def test_regime_partition(pair):
    tag = regime(pair)
    p, q = pair.p, pair.q
    expected = Q_GT_4P if q > 4 * p else Q_IN_3P_4P if q > 3 * p else Q_IN_2P_3P if q > 2 * p else Q_LT_2P
    assert tag.regime == expected


def test_regime_2p_3p_flags():
    # (7,17): s=3, s+1=4 | 16; s != p-2, s != (p-5)/4
    tag = regime(SemiprimePair(7, 17))
    assert tag.flag("s_plus_1_divides_q_minus_1")
    assert not tag.flag("s_eq_p_minus_2_or_p_minus_5_over_4")
    # (13,37): s=11 = p-2, s+1=12 | 36
    tag = regime(SemiprimePair(13, 37))
    assert tag.flag("s_plus_1_divides_q_minus_1") and tag.flag("s_eq_p_minus_2_or_p_minus_5_over_4")


def test_extras_first_matching_q_lt_2p_subcase():
    # (2,3): s = p-1 = 1 -> (s-1)q/(q-2) = 0 and q/2
    assert extras(SemiprimePair(2, 3)) == [(0, 1), (3, 2)]
    # (3,5): q = 5
    assert extras(SemiprimePair(3, 5)) == [(5, 2), (5, 3)]
    # (5,7): s = 2, p-s = 3 divides 2s-1 = 3
    assert extras(SemiprimePair(5, 7)) == [(7, 2)]
    # (7,11): s = 4 = (p+1)/2
    assert extras(SemiprimePair(7, 11)) == [(11, 3)]


def test_closed_form_known_values():
    assert Fraction(85, 9) in closed_form_q_ks(SemiprimePair(5, 17))
    ks = closed_form_q_ks(SemiprimePair(3, 5))
    assert Fraction(5, 2) in ks and Fraction(5, 3) in ks


def test_closed_form_2_3_drops_zero_extra():
    ks = closed_form_q_ks(SemiprimePair(2, 3))
    assert 0 not in ks
    assert ks.values() == oracle_q_ks(SemiprimePair(2, 3)).values()
    entry = next(e for e in ks if e.alpha == Fraction(3, 2))
    assert "EXTRA" in entry.families


def test_closed_form_merges_provenance():
    ks = closed_form_q_ks(SemiprimePair(2, 3))
    entry = next(e for e in ks if e.alpha == Fraction(12, 5))
    assert entry.families == {"B", "D"}
    assert {fam for fam, _ in entry.sources} == {"B", "D"}


@pytest.mark.parametrize("pair", PAIRS_60, ids=str)
def test_closed_form_equals_oracle(pair):
    assert closed_form_q_ks(pair).values() == oracle_q_ks(pair).values()


def test_closed_form_z_5_7():
    assert closed_form_z_ks(SemiprimePair(5, 7)) == [3, 6, 8, 11]
    # 2p = 10 absent: p - s = 3 does not divide p - 1 = 4
    assert 10 not in closed_form_z_ks(SemiprimePair(5, 7))


@pytest.mark.parametrize("pair", [p for p in prime_pairs(120) if p.q < 2 * p.p], ids=str)
def test_closed_form_z_matches_integer_slice(pair):
    z = closed_form_z_ks(pair)
    assert z == closed_form_q_ks(pair).integers()
    assert pair.p + pair.q - 1 in z


def test_closed_form_z_regime_error():
    with pytest.raises(RegimeError):
        closed_form_z_ks(SemiprimePair(2, 11))
