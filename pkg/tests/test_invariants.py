from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from higgs_atlas.invariants import (Curve, InvariantPair, Signature, bundle_moduli_dim,
                                    expected_dim_higgs, format_rational, milnor_wood_ok,
                                    min_energy, parse_rational, rigid_dim,
                                    slope_bounds_report, toledo, toledo_max,
                                    triple_moduli_dim)
from higgs_atlas.triples import TripleType

ranks = st.integers(1, 6)
genera = st.integers(2, 6)
degrees = st.integers(-40, 40)


@pytest.mark.parametrize("p,q,a,b,expected", [
    (1, 1, 1, 0, Fraction(1)),
    (2, 3, 0, 0, Fraction(0)),
    (2, 3, 2, 2, Fraction(4, 5)),
    (2, 3, 2, 0, Fraction(12, 5)),
    (1, 2, -1, 0, Fraction(-4, 3)),
])
def test_toledo_values(p, q, a, b, expected):
    assert toledo(Signature(p, q), InvariantPair(a, b)) == expected


@pytest.mark.parametrize("p,q,g,expected", [(1, 1, 2, 2), (2, 3, 2, 4), (3, 3, 4, 18)])
def test_toledo_max(p, q, g, expected):
    assert toledo_max(Signature(p, q), Curve(g)) == expected


def test_milnor_wood():
    assert milnor_wood_ok(Signature(2, 3), Curve(2), InvariantPair(1, 0))
    assert not milnor_wood_ok(Signature(1, 1), Curve(2), InvariantPair(3, 0))
    assert milnor_wood_ok(Signature(4, 1), Curve(5), InvariantPair(0, 0))


def test_slope_bounds_examples():
    rep = slope_bounds_report(Signature(2, 3), Curve(2), InvariantPair(2, 0), rk_beta=0, rk_gamma=2)
    assert rep.all_pass
    rep = slope_bounds_report(Signature(1, 1), Curve(2), InvariantPair(2, 0), rk_gamma=0)
    assert not rep.gamma_toledo and not rep.gamma_slope
    assert rep.beta_toledo
    assert slope_bounds_report(Signature(3, 2), Curve(3), InvariantPair(0, 0), 0, 0).all_pass


def test_slope_bounds_rank_out_of_range():
    with pytest.raises(ValueError):
        slope_bounds_report(Signature(1, 2), Curve(2), InvariantPair(0, 0), rk_beta=2)


@pytest.mark.parametrize("p,q,g,expected", [(2, 3, 2, 26), (1, 1, 2, 5), (1, 2, 2, 10)])
def test_expected_dim(p, q, g, expected):
    assert expected_dim_higgs(Signature(p, q), Curve(g)) == expected


@pytest.mark.parametrize("p,q,g,expected", [(2, 3, 2, 19), (1, 2, 2, 7), (3, 2, 2, 19)])
def test_rigid_dim(p, q, g, expected):
    assert rigid_dim(Signature(p, q), Curve(g)) == expected


def test_rigid_dim_needs_unequal_ranks():
    with pytest.raises(ValueError):
        rigid_dim(Signature(2, 2), Curve(2))


@pytest.mark.parametrize("p,q,a,b,expected", [
    (2, 3, 0, 0, Fraction(0)),
    (1, 1, 1, 0, Fraction(1, 2)),
    (2, 3, 2, 0, Fraction(6, 5)),
])
def test_min_energy(p, q, a, b, expected):
    assert min_energy(Signature(p, q), InvariantPair(a, b)) == expected


def test_triple_moduli_dim():
    assert triple_moduli_dim(TripleType(2, 3, 4, 0), Curve(2)) == 20
    assert triple_moduli_dim(TripleType(2, 1, 0, 0), Curve(2)) == 4
    with pytest.raises(ValueError):
        triple_moduli_dim(TripleType(2, 2, 1, 0), Curve(2))


def test_bad_inputs():
    with pytest.raises(ValueError):
        Signature(0, 1)
    with pytest.raises(ValueError):
        Curve(1)


@pytest.mark.parametrize("x,text", [(Fraction(3), "3"), (Fraction(-4, 6), "-2/3"),
                                    (Fraction(0), "0")])
def test_format_rational(x, text):
    assert format_rational(x) == text
    assert parse_rational(text) == x


@given(ranks, ranks, degrees, degrees, st.integers(-5, 5))
def test_toledo_invariant_under_shift(p, q, a, b, l):
    sig = Signature(p, q)
    x = InvariantPair(a, b)
    assert toledo(sig, x.shifted(sig, l)) == toledo(sig, x)


@given(ranks, ranks, degrees, degrees)
def test_toledo_is_reduced(p, q, a, b):
    tau = toledo(Signature(p, q), InvariantPair(a, b))
    num, den = format_rational(tau).partition("/")[::2]
    if den:
        from math import gcd
        assert gcd(int(num), int(den)) == 1 and int(den) > 1


@given(ranks, ranks, genera, degrees, degrees)
def test_milnor_wood_iff_default_slope_bounds(p, q, g, a, b):
    sig, curve, x = Signature(p, q), Curve(g), InvariantPair(a, b)
    assert slope_bounds_report(sig, curve, x).all_pass == milnor_wood_ok(sig, curve, x)


@given(ranks, ranks, degrees, degrees)
def test_min_energy_is_half_abs_toledo(p, q, a, b):
    sig, x = Signature(p, q), InvariantPair(a, b)
    assert min_energy(sig, x) == abs(toledo(sig, x)) / 2


@given(ranks, ranks, genera)
def test_rigid_dim_below_expected(p, q, g):
    if p == q:
        return
    sig, curve = Signature(p, q), Curve(g)
    m, M = min(p, q), max(p, q)
    assert rigid_dim(sig, curve) == bundle_moduli_dim(2 * m, curve) + bundle_moduli_dim(M - m, curve)
    assert rigid_dim(sig, curve) < expected_dim_higgs(sig, curve)
