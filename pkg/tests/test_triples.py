from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from higgs_atlas import triples
from higgs_atlas.invariants import Curve, InvariantPair, Signature
from higgs_atlas.oracle import brute_force_is_critical
from higgs_atlas.triples import (AlphaInterval, Orientation, Position, Regime, TripleType,
                                 alpha_bounds_from_higgs, alpha_independent_possible,
                                 alpha_range, critical_shapes, critical_values,
                                 gcd_noncritical_test, higgs_to_triple, moduli_descriptor,
                                 mu_alpha, position_of_2g2)


def test_mu_alpha():
    assert mu_alpha(TripleType(2, 3, 4, 0), 2) == 2
    t = TripleType(3, 2, 5, -1)
    assert mu_alpha(t, 0) == Fraction(4, 5)


def test_alpha_range_examples():
    assert alpha_range(TripleType(2, 3, 4, 0)) == AlphaInterval(Fraction(2), Fraction(12))
    assert alpha_range(TripleType(1, 1, 2, 1)) == AlphaInterval(Fraction(1), None)
    assert alpha_range(TripleType(2, 4, 2, 4)).lo == 0


def test_alpha_interval_empty_and_contains():
    assert AlphaInterval(Fraction(-1), None).empty
    assert not AlphaInterval(Fraction(1), None).empty
    iv = AlphaInterval(Fraction(2), Fraction(12))
    assert iv.contains(2) and iv.contains(12) and not iv.contains(13)
    assert iv.render() == "[2, 12]"


def test_higgs_to_triple_examples():
    c = higgs_to_triple(Signature(1, 1), Curve(2), InvariantPair(1, 0))
    assert c.orientation is Orientation.BetaZero
    assert c.triple.as_tuple() == (1, 1, 2, 1)
    c = higgs_to_triple(Signature(1, 2), Curve(2), InvariantPair(-1, 0))
    assert c.orientation is Orientation.GammaZero
    assert c.triple.as_tuple() == (1, 2, 1, 0)
    c = higgs_to_triple(Signature(2, 3), Curve(2), InvariantPair(0, 0))
    assert c.orientation is Orientation.Both
    assert [t.as_tuple() for t in c.triples] == [(2, 3, 4, 0), (3, 2, 6, 0)]


def test_alpha_bounds_from_higgs_examples():
    b = alpha_bounds_from_higgs(Signature(1, 1), Curve(2), InvariantPair(1, 0))
    assert b.lo == 1 and b.hi is None
    b = alpha_bounds_from_higgs(Signature(2, 3), Curve(2), InvariantPair(0, 0))
    assert (b.lo, b.hi) == (2, 12)
    assert b == alpha_range(TripleType(2, 3, 4, 0))


@pytest.mark.parametrize("p,q,g,a,b,where", [
    (2, 3, 2, 0, 0, Position.AtAlphaMin),
    (1, 2, 2, 1, -1, Position.AtAlphaMax),
    (1, 1, 2, 2, 0, Position.AtAlphaMinZero_pEQq),
    (1, 1, 2, 3, 0, Position.Outside),
    (2, 3, 2, 2, 0, Position.Interior),
])
def test_position_of_2g2(p, q, g, a, b, where):
    assert position_of_2g2(Signature(p, q), Curve(g), InvariantPair(a, b)) is where


def test_critical_values_fixed():
    assert critical_values(TripleType(1, 1, 2, 1), 10) == [3, 5, 7, 9]


def test_critical_at_alpha_min_is_outside_open_window():
    # (1,1,2,0) has a wall at alpha = 2 = alpha_m, which the open window excludes
    t = TripleType(1, 1, 2, 0)
    assert brute_force_is_critical(1, 1, 2, 0, 2)
    assert 2 not in critical_values(t, 10)
    assert critical_values(t, 10) == [4, 6, 8, 10]


def test_critical_window_must_exceed_alpha_min():
    with pytest.raises(ValueError):
        critical_values(TripleType(1, 1, 2, 1), 1)


def test_critical_values_capped_at_alpha_max():
    t = TripleType(2, 3, 4, 0)
    vals = critical_values(t, 100)
    assert vals and all(2 < v < 12 for v in vals)


def test_gcd_tests():
    assert gcd_noncritical_test(TripleType(1, 1, 2, 1), 2)
    assert not gcd_noncritical_test(TripleType(1, 1, 2, 0), 2)
    assert not gcd_noncritical_test(TripleType(2, 3, 4, 0), 2)
    assert not alpha_independent_possible(TripleType(2, 3, 4, 0))
    assert not alpha_independent_possible(TripleType(1, 1, 1, 1))
    assert alpha_independent_possible(TripleType(2, 2, 2, 2))


def test_moduli_descriptor_examples():
    curve = Curve(2)
    d = moduli_descriptor(TripleType(2, 3, 4, 0), curve, Regime.AtAlphaMin)
    assert d.product_description == "M(2,4) x M(3,0)" and d.nonempty and d.irreducible
    d = moduli_descriptor(TripleType(3, 2, 6, 0), curve, Regime.AtAlphaMax)
    assert d.product_description == "M(2,0) x M(1,6)"
    d = moduli_descriptor(TripleType(1, 1, 3, 3), curve, Regime.EqualRanksSmallGap, alpha=1)
    assert d.product_description == "M(1,3)"
    with pytest.raises(ValueError):
        moduli_descriptor(TripleType(2, 2, 0, 0), curve, Regime.AtAlphaMax)


def test_generic_large_fibration_dimension():
    d = moduli_descriptor(TripleType(2, 3, 4, 0), Curve(2), Regime.GenericLarge, alpha=4)
    assert d.dimension == 20
    assert d.fiber_dim == 3 * 4 - 0 + 2 * 1 * 1 - 1
    with pytest.raises(ValueError):
        moduli_descriptor(TripleType(2, 3, 4, 0), Curve(2), Regime.GenericLarge, alpha=1)


def test_alpha_sweep_covers_milnor_wood_ends():
    rows = triples.alpha_sweep(Signature(1, 2), Curve(2))
    assert rows[0].position is Position.Outside and rows[-1].position is Position.Outside
    inside = [r for r in rows if r.position is not Position.Outside]
    assert inside[0].position is Position.AtAlphaMax
    assert [r.position for r in inside].count(Position.AtAlphaMin) == 1


small = st.integers(1, 3)
deg = st.integers(-8, 8)


@given(small, small, deg, deg)
def test_critical_values_strictly_increasing_and_match_brute_force(n1, n2, d1, d2):
    t = TripleType(n1, n2, d1, d2)
    rng = alpha_range(t)
    window = rng.lo + 6
    vals = critical_values(t, window)
    assert all(x < y for x, y in zip(vals, vals[1:]))
    for m in range(int(rng.lo) + 1, int(window) + 1):
        if m <= rng.lo or (rng.hi is not None and m >= rng.hi):
            continue
        assert (Fraction(m) in vals) == brute_force_is_critical(n1, n2, d1, d2, m)


@given(small, small, deg, deg)
def test_complementary_shapes_share_alpha(n1, n2, d1, d2):
    t = TripleType(n1, n2, d1, d2)
    window = alpha_range(t).lo + 5
    for alpha, s in critical_shapes(t, window):
        comp_n1, comp_n2 = n1 - s.n1p, n2 - s.n2p
        comp_d = t.d - s.dp
        # the quotient has the same alpha-slope at a wall
        assert (s.dp + alpha * s.n2p) * (comp_n1 + comp_n2) == \
            (comp_d + alpha * comp_n2) * (s.n1p + s.n2p)


@given(deg, st.integers(0, 8))
def test_rank_one_pairs_step_by_two(d2, gap):
    # alpha = 0 is degenerate when alpha_m < 0, so keep d1 >= d2
    t = TripleType(1, 1, d2 + gap, d2)
    lo = alpha_range(t).lo
    assert critical_values(t, lo + 9) == [lo + 2 * j for j in range(1, 5)]


@given(small, small, deg, deg, st.integers(-3, 6))
def test_gcd_certificate_is_sound(n1, n2, d1, d2, m):
    if gcd_noncritical_test(TripleType(n1, n2, d1, d2), m):
        assert not brute_force_is_critical(n1, n2, d1, d2, m)


@given(small, small, st.integers(2, 4), st.integers(-10, 10), st.integers(-10, 10))
def test_slope_identity_at_2g2(p, q, g, a, b):
    sig, curve, x = Signature(p, q), Curve(g), InvariantPair(a, b)
    for t in higgs_to_triple(sig, curve, x).triples:
        assert mu_alpha(t, curve.degK) == Fraction(x.d, sig.n) + curve.degK
