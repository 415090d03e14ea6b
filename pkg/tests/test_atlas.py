from math import gcd

import pytest
from hypothesis import given, strategies as st

from higgs_atlas import atlas
from higgs_atlas.atlas import (Connectedness, RegionSpec, SplitFactorization, TwistedPairs,
                               canonical_rep, classify, count_components, d_range,
                               enumerate_region, exact_sequence_check, in_region, tau_fiber)
from higgs_atlas.invariants import Curve, InvariantPair, Signature, toledo
from higgs_atlas.triples import Orientation


def spec(p, q, g):
    return RegionSpec(Signature(p, q), Curve(g))


def pairs(xs):
    return sorted((x.a, x.b) for x in xs)


def test_in_region():
    s = spec(2, 3, 2)
    assert in_region(s, InvariantPair(0, -5))
    assert not in_region(s, InvariantPair(2, -2))
    assert in_region(s, InvariantPair(0, 0))


def test_canonical_rep():
    assert canonical_rep(spec(2, 3, 2), InvariantPair(4, 1)) == InvariantPair(0, -5)
    assert canonical_rep(spec(1, 1, 2), InvariantPair(1, 0)) == InvariantPair(0, -1)
    assert canonical_rep(spec(2, 3, 2), InvariantPair(1, 1)) == InvariantPair(1, 1)
    with pytest.raises(ValueError):
        canonical_rep(spec(1, 1, 2), InvariantPair(3, 0))


def test_enumerate_small_region():
    assert pairs(enumerate_region(spec(1, 1, 2))) == [(-2, 0), (-1, 0), (0, -2), (0, -1), (0, 0)]
    assert len(enumerate_region(spec(2, 4, 2))) == 26


@pytest.mark.parametrize("p,q,g,count", [(1, 1, 2, 5), (2, 3, 2, 21), (2, 4, 2, 26),
                                         (3, 3, 2, 39), (4, 2, 3, 50)])
def test_count_components(p, q, g, count):
    assert count_components(spec(p, q, g)) == count


def test_tau_fibers():
    f = tau_fiber(spec(2, 4, 2), -2)
    assert pairs(f.points) == [(-1, 0), (0, 2)]
    assert f.in_range
    assert pairs(tau_fiber(spec(1, 1, 2), 0).points) == [(0, 0)]
    out = tau_fiber(spec(1, 1, 2), 9)
    assert not out.in_range and out.points == ()


def test_exact_sequence():
    rep = exact_sequence_check(spec(2, 4, 2), 6)
    assert rep.passed and set(rep.fiber_sizes.values()) == {2}
    rep = exact_sequence_check(spec(2, 3, 2), 4)
    assert rep.passed and set(rep.fiber_sizes.values()) == {1}


def test_coprime_partition():
    good, bad = atlas.coprime_partition(spec(2, 3, 2))
    assert canonical_rep(spec(2, 3, 2), InvariantPair(2, 2)) in good
    assert InvariantPair(0, 0) in bad
    assert len(good) + len(bad) == 21


def test_gcd_line_counterexample():
    rep = atlas.gcd_line_invariance_check(spec(2, 4, 2), -2)
    assert rep.passed
    assert rep.gcd_reduced == (1, 1)
    assert sorted(rep.gcd_full) == [1, 2]


def test_d_range():
    r = d_range(spec(1, 1, 2))
    assert (r.d_min, r.d_max) == (-2, 0) and r.d_min_ok and 1 in r.missing
    r = d_range(spec(2, 3, 2))
    assert (r.d_min, r.d_max) == (-5, 3)


def test_classify_tau_zero():
    rec = classify(Signature(1, 1), Curve(2), InvariantPair(0, 0))
    assert rec.nonempty and not rec.stable_locus_nonempty
    assert rec.connectedness is Connectedness.Connected
    assert rec.triple.orientation is Orientation.Both


def test_classify_coprime():
    rec = classify(Signature(2, 3), Curve(2), InvariantPair(2, 0))
    assert rec.smooth and rec.dimension == 26
    assert rec.connectedness is Connectedness.Connected
    assert rec.triple.triple.as_tuple() == (3, 2, 6, 2)


def test_classify_rigid():
    rec = classify(Signature(1, 2), Curve(2), InvariantPair(1, -1))
    assert not rec.stable_locus_nonempty and rec.dimension == 7
    assert rec.connectedness is Connectedness.Connected
    r = rec.rigidity
    assert isinstance(r, SplitFactorization)
    assert (r.higgs_rank, r.higgs_degrees) == (1, (1, -1))
    assert (r.bundle_rank, r.bundle_degree, r.bundle_sector) == (1, 0, "W")


def test_classify_maximal_equal_ranks():
    rec = classify(Signature(2, 2), Curve(2), InvariantPair(4, 0))
    assert isinstance(rec.rigidity, TwistedPairs)
    assert rec.rigidity.fiber_rank == 12
    assert rec.dimension == 17 and rec.stable_locus_nonempty


def test_classify_milnor_wood_failure():
    rec = classify(Signature(1, 1), Curve(2), InvariantPair(3, 0))
    assert not rec.nonempty and rec.dimension is None


def test_build_atlas_order():
    recs = atlas.build_atlas(spec(1, 1, 2))
    assert [(r.cls.rep.a, r.cls.rep.b) for r in recs] == [(-2, 0), (-1, 0), (0, -2), (0, -1), (0, 0)]


small = st.integers(1, 4)
genus = st.integers(2, 4)


@given(small, small, genus, st.integers(-30, 30), st.integers(-30, 30))
def test_canonical_rep_lands_in_region_on_same_class(p, q, g, a, b):
    s = spec(p, q, g)
    x = InvariantPair(a, b)
    sig = s.sig
    if abs(toledo(sig, x)) > 2 * min(p, q) * (g - 1):
        return
    r = canonical_rep(s, x)
    assert in_region(s, r)
    # same class: differs by a multiple of (p, q)
    assert (r.a - a) % p == 0 and (r.a - a) // p * q == r.b - b


@given(small, small, genus)
def test_fibers_have_k_points(p, q, g):
    s = spec(p, q, g)
    k = gcd(p, q)
    for t in range(-s.t_bound, s.t_bound + 1):
        assert len(tau_fiber(s, t).points) == k


@given(small, small, genus)
def test_split_factorization_degrees_add_up(p, q, g):
    if p == q:
        return
    s = spec(p, q, g)
    for x in enumerate_region(s):
        rec = classify(s.sig, s.curve, x)
        r = rec.rigidity
        if r is None:
            continue
        dv, dw = r.higgs_degrees
        extra_v = r.bundle_degree if r.bundle_sector == "V" else 0
        extra_w = r.bundle_degree if r.bundle_sector == "W" else 0
        assert (dv + extra_v, dw + extra_w) == (x.a, x.b)
        assert r.higgs_dim + r.bundle_dim == rec.dimension
