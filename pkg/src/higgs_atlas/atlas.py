"""
Component atlas of the PU(p,q) representation variety.

Components are labelled by classes [a,b] in Z+Z/(p,q)Z with
|tau| <= tau_M.  Each class has exactly one representative in the
fundamental region Omega_Z, the integer points with

    a < p,  b < q,  not (a < 0 and b < 0),  |aq - bp| <= (n/2) tau_M.

The last two conditions bound the region by the rays a = 0, b <= 0 and
b = 0, a <= 0 and by the lines tau = +-tau_M; the rays a = p and b = q are
left out.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ._pool import ordered_map
from .invariants import (Curve, InvariantPair, Signature, bundle_moduli_dim, expected_dim_higgs,
                         format_rational, min_energy, rigid_dim, toledo, toledo_max)
from .morse import euler_characteristic
from .triples import (AlphaInterval, HiggsTripleCorrespondence,
                      alpha_bounds_from_higgs, higgs_to_triple)


class InconsistencyError(RuntimeError):
    """A closed form disagreed with its enumeration; indicates a bug."""


@dataclass(frozen=True)
class RegionSpec:
    sig: Signature
    curve: Curve

    @property
    def bound(self) -> int:
        """B = (n/2) tau_M = n min(p,q) (g-1)."""
        return self.sig.n * self.sig.rank_min * (self.curve.g - 1)

    @property
    def t_bound(self) -> int:
        """Largest |t| with the line aq - bp = tk meeting the region."""
        return self.bound // self.sig.k


def in_region(spec: RegionSpec, inv: InvariantPair) -> bool:
    p, q = spec.sig.p, spec.sig.q
    a, b = inv.a, inv.b
    return (a < p and b < q and not (a < 0 and b < 0)
            and abs(a * q - b * p) <= spec.bound)


def canonical_rep(spec: RegionSpec, inv: InvariantPair) -> InvariantPair:
    """The representative of [a,b] inside the fundamental region."""
    sig = spec.sig
    if abs(toledo(sig, inv)) > toledo_max(sig, spec.curve):
        raise ValueError(f"class of ({inv.a}, {inv.b}) has no component: "
                         "Milnor-Wood inequality fails")
    # region points have -B <= a < p
    l_lo = -((inv.a + spec.bound) // sig.p)
    l_hi = (sig.p - inv.a) // sig.p
    hits = [inv.shifted(sig, l) for l in range(l_lo, l_hi + 1)
            if in_region(spec, inv.shifted(sig, l))]
    if len(hits) != 1:
        raise InconsistencyError(f"class of ({inv.a}, {inv.b}) has {len(hits)} "
                                 "representatives in the region")
    return hits[0]


def enumerate_region(spec: RegionSpec) -> list:
    p, q, B = spec.sig.p, spec.sig.q, spec.bound
    pts = []
    for a in range(-B // q - 1, p + 1):
        for b in range(-B // p - 1, q + 1):
            inv = InvariantPair(a, b)
            if in_region(spec, inv):
                pts.append(inv)
    return pts


def component_count_formula(sig: Signature, curve: Curve) -> int:
    return 2 * sig.n * sig.rank_min * (curve.g - 1) + sig.k


def count_components(spec: RegionSpec) -> int:
    expected = component_count_formula(spec.sig, spec.curve)
    found = len(enumerate_region(spec))
    if found != expected:
        raise InconsistencyError(f"region has {found} points, formula gives {expected}")
    return expected


def line_index(sig: Signature, inv: InvariantPair) -> int:
    """t with aq - bp = t k."""
    return (inv.a * sig.q - inv.b * sig.p) // sig.k


@dataclass(frozen=True)
class TauFiber:
    t: int
    tau: Fraction
    points: tuple
    in_range: bool


def tau_fiber(spec: RegionSpec, t: int) -> TauFiber:
    sig = spec.sig
    tau = Fraction(2 * sig.k * t, sig.n)
    if abs(t) > spec.t_bound:
        return TauFiber(t, tau, (), False)
    pts = tuple(x for x in enumerate_region(spec) if line_index(sig, x) == t)
    return TauFiber(t, tau, pts, True)


def _normalize_class(sig: Signature, a: int, b: int):
    l = -(a // sig.p)
    return a + l * sig.p, b + l * sig.q


@dataclass
class ExactSequenceReport:
    t_window: int
    image_ok: bool
    fibers_ok: bool
    kernel_ok: bool
    fiber_sizes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.image_ok and self.fibers_ok and self.kernel_ok


def exact_sequence_check(spec: RegionSpec, t_window: int) -> ExactSequenceReport:
    """Check 0 -> Z/k -> Z+Z/(p,q)Z -> (2k/n)Z -> 0 on classes with |t| <= t_window.

    Classes are taken with their representative 0 <= a < p, so this does not
    depend on the fundamental region.
    """
    if t_window < 1:
        raise ValueError("t_window must be at least 1")
    sig = spec.sig
    p, q, k, n = sig.p, sig.q, sig.k, sig.n
    reach = t_window * k
    fibers = {}
    for a in range(p):
        # |aq - bp| <= reach bounds b
        b_lo = -((reach - a * q) // p) - 1
        b_hi = (reach + a * q) // p + 1
        for b in range(b_lo, b_hi + 1):
            diff = a * q - b * p
            if abs(diff) > reach:
                continue
            tau = Fraction(2 * diff, n)
            fibers.setdefault(tau, set()).add((a, b))
    expected_image = {Fraction(2 * k * t, n) for t in range(-t_window, t_window + 1)}
    image_ok = set(fibers) == expected_image
    sizes = {tau: len(v) for tau, v in fibers.items()}
    fibers_ok = all(s == k for s in sizes.values())
    gen = (p // k, q // k)
    kernel = {_normalize_class(sig, j * gen[0], j * gen[1]) for j in range(k)}
    # the generator has order exactly k in the quotient
    order_ok = all(_normalize_class(sig, j * gen[0], j * gen[1]) != (0, 0)
                   for j in range(1, k))
    order_ok = order_ok and _normalize_class(sig, k * gen[0], k * gen[1]) == (0, 0)
    kernel_ok = fibers.get(Fraction(0), set()) == kernel and order_ok
    return ExactSequenceReport(t_window, image_ok, fibers_ok, kernel_ok,
                               {format_rational(t): s for t, s in sorted(sizes.items())})


def is_coprime(sig: Signature, inv: InvariantPair) -> bool:
    return gcd(sig.n, inv.d) == 1


def coprime_partition(spec: RegionSpec):
    """Split the region into classes with GCD(p+q, a+b) = 1 and the rest."""
    sig = spec.sig
    pts = enumerate_region(spec)
    good = [x for x in pts if is_coprime(sig, x)]
    bad = [x for x in pts if not is_coprime(sig, x)]
    witness = canonical_rep(spec, InvariantPair(sig.p, sig.q - 1))
    if not (good and bad and witness in good and InvariantPair(0, 0) in bad):
        raise InconsistencyError("coprime partition lost one of its witnesses")
    return good, bad


@dataclass
class LineGcdReport:
    t: int
    points: tuple
    gcd_reduced: tuple
    gcd_full: tuple
    constant: bool
    part6_ok: bool

    @property
    def passed(self) -> bool:
        return self.constant and self.part6_ok


def gcd_line_invariance_check(spec: RegionSpec, t: int) -> LineGcdReport:
    """GCD(a+b, n/k) is constant along a tau fiber, and its non-coprimality
    forces GCD(a+b, n) != 1 on the whole fiber.  The converse can fail."""
    sig = spec.sig
    fiber = tau_fiber(spec, t)
    nk = sig.n // sig.k
    reduced = tuple(gcd(x.d, nk) for x in fiber.points)
    full = tuple(gcd(x.d, sig.n) for x in fiber.points)
    constant = len(set(reduced)) <= 1
    part6 = True
    if reduced and reduced[0] != 1:
        part6 = all(v != 1 for v in full)
    return LineGcdReport(t, fiber.points, reduced, full, constant, part6)


@dataclass(frozen=True)
class DRange:
    d_min: int
    d_max: int
    d_min_expected: int
    missing: tuple

    @property
    def d_min_ok(self) -> bool:
        return self.d_min == self.d_min_expected


def d_range(spec: RegionSpec) -> DRange:
    """Achieved range of d = a + b over the region.

    ``missing`` lists the values in [-n(g-1), n) that no region point attains;
    the top values n-1, ... are typically among them because the corner
    (p, q) is excluded.
    """
    ds = {x.d for x in enumerate_region(spec)}
    n = spec.sig.n
    lower = -n * (spec.curve.g - 1)
    missing = tuple(d for d in range(lower, n) if d not in ds)
    return DRange(min(ds), max(ds), lower, missing)


class Connectedness(enum.Enum):
    Connected = "Connected"
    StableClosureConnected = "StableClosureConnected"
    Unknown = "Unknown"


@dataclass(frozen=True)
class ComponentClass:
    rep: InvariantPair
    tau: Fraction
    d: int
    coprime: bool
    t: int


@dataclass(frozen=True)
class SplitFactorization:
    """M(a,b) = M(m, m, a', b') x M(M - m, e) at maximal tau with p != q.

    The first factor is a U(m,m) moduli space with maximal Toledo
    invariant; the second is bundle moduli of rank M - m and degree e, sitting
    in ``bundle_sector``.  ``twisted_degree`` is the degree of the K^2-twisted
    Higgs pair that the U(m,m) factor is isomorphic to.
    """
    higgs_rank: int
    higgs_degrees: tuple
    bundle_rank: int
    bundle_degree: int
    bundle_sector: str
    twisted_degree: int
    higgs_dim: int
    bundle_dim: int


@dataclass(frozen=True)
class TwistedPairs:
    """M(a,b) = M_{K^2}(p, a) = M_{K^2}(p, b) when p = q and |a - b| = p(2g-2).

    ``fiber_rank`` is the rank of the vector bundle over stable bundles
    that forms the open subset, chi(End V (x) K^2) = 3 p^2 (g-1).
    """
    rank: int
    degree_v: int
    degree_w: int
    fiber_rank: int


@dataclass(frozen=True)
class ComponentRecord:
    cls: ComponentClass
    nonempty: bool
    stable_locus_nonempty: bool | None = None
    smooth: bool | None = None
    dimension: int | None = None
    connectedness: Connectedness | None = None
    rigidity: SplitFactorization | TwistedPairs | None = None
    triple: HiggsTripleCorrespondence | None = None
    alpha: AlphaInterval | None = None
    min_energy: Fraction | None = None


def _split_factorization(sig: Signature, curve: Curve, inv: InvariantPair,
                         tau: Fraction) -> SplitFactorization:
    m = sig.rank_min
    top = m * curve.degK
    a, b = inv.a, inv.b
    if sig.p < sig.q:
        if tau > 0:
            dv, dw = a, a - top
            extra = b - a + top
        else:
            dv, dw = a, a + top
            extra = b - a - top
        sector, twisted = "W", dw
    else:
        # V carries the bundle factor; the U(q,q) part takes all of W
        if tau > 0:
            dv, dw = b + top, b
            extra = a - b - top
        else:
            dv, dw = b - top, b
            extra = a - b + top
        sector, twisted = "V", dv
    assert dv + (extra if sector == "V" else 0) == a
    assert dw + (extra if sector == "W" else 0) == b
    assert abs(toledo(Signature(m, m), InvariantPair(dv, dw))) == top
    higgs_dim = expected_dim_higgs(Signature(m, m), curve)
    bundle_dim = bundle_moduli_dim(sig.rank_max - m, curve)
    return SplitFactorization(m, (dv, dw), sig.rank_max - m, extra, sector,
                              twisted, higgs_dim, bundle_dim)


def _twisted_pairs(sig: Signature, curve: Curve, inv: InvariantPair) -> TwistedPairs:
    p = sig.p
    # End V (x) K^2 has rank p^2 and degree p^2 * 2(2g-2); H^1 vanishes
    fiber = euler_characteristic(p * p, p * p * 2 * curve.degK, curve)
    assert fiber == 3 * p * p * (curve.g - 1)
    return TwistedPairs(p, inv.a, inv.b, fiber)


def classify(sig: Signature, curve: Curve, inv: InvariantPair) -> ComponentRecord:
    spec = RegionSpec(sig, curve)
    tau = toledo(sig, inv)
    tau_max = toledo_max(sig, curve)
    coprime = is_coprime(sig, inv)
    nonempty = abs(tau) <= tau_max
    rep = canonical_rep(spec, inv) if nonempty else inv
    cls = ComponentClass(rep, tau, rep.d, coprime, line_index(sig, rep))
    if not nonempty:
        return ComponentRecord(cls, False)

    maximal = abs(tau) == tau_max
    p_eq_q = sig.p == sig.q
    stable = tau != 0 and not (maximal and not p_eq_q)

    if maximal and not p_eq_q:
        dimension = rigid_dim(sig, curve)
        rigidity = _split_factorization(sig, curve, inv, tau)
    else:
        dimension = expected_dim_higgs(sig, curve)
        rigidity = _twisted_pairs(sig, curve, inv) if maximal else None

    high_equal = p_eq_q and (sig.p - 1) * curve.degK < abs(tau) <= sig.p * curve.degK
    if tau == 0 or (maximal and not p_eq_q) or coprime or high_equal:
        connectedness = Connectedness.Connected
    elif stable:
        connectedness = Connectedness.StableClosureConnected
    else:
        connectedness = Connectedness.Unknown

    return ComponentRecord(
        cls=cls,
        nonempty=True,
        stable_locus_nonempty=stable,
        smooth=coprime,
        dimension=dimension,
        connectedness=connectedness,
        rigidity=rigidity,
        triple=higgs_to_triple(sig, curve, inv),
        alpha=alpha_bounds_from_higgs(sig, curve, inv),
        min_energy=min_energy(sig, inv),
    )


def build_atlas(spec: RegionSpec) -> list:
    """Classify every component, ordered lexicographically by representative."""
    pts = sorted(enumerate_region(spec), key=lambda x: (x.a, x.b))
    return ordered_map(lambda x: classify(spec.sig, spec.curve, x), pts)
