"""
Holomorphic triples T = (E1, E2, phi: E2 -> E1) and their alpha-stability.

The alpha-slope of a triple of type (n1, n2, d1, d2) is

    mu_alpha = (d1 + d2 + alpha * n2) / (n1 + n2)

Walls in the alpha-line come from numerically possible subtriples whose
alpha-slope crosses that of T.  Local minima of the Higgs field norm on a
U(p,q) component are moduli of (2g-2)-polystable triples, which is what
ties this module to :mod:`higgs_atlas.invariants`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd

from .invariants import (Curve, InvariantPair, Signature, bundle_moduli_dim,
                         format_rational, toledo, toledo_max, triple_moduli_dim)


@dataclass(frozen=True)
class TripleType:
    n1: int
    n2: int
    d1: int
    d2: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError(f"triple ranks must be positive, got ({self.n1}, {self.n2})")

    @property
    def mu1(self) -> Fraction:
        return Fraction(self.d1, self.n1)

    @property
    def mu2(self) -> Fraction:
        return Fraction(self.d2, self.n2)

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def d(self) -> int:
        return self.d1 + self.d2

    def as_tuple(self):
        return (self.n1, self.n2, self.d1, self.d2)

    def __str__(self):
        return "({}, {}, {}, {})".format(*self.as_tuple())


@dataclass(frozen=True)
class AlphaInterval:
    """Closed range [lo, hi] for the stability parameter; ``hi=None`` means +inf."""
    lo: Fraction
    hi: Fraction | None

    @property
    def empty(self) -> bool:
        # alpha must be non-negative, so lo < 0 rules out every triple
        if self.lo < 0:
            return True
        return self.hi is not None and self.hi < self.lo

    def contains(self, alpha) -> bool:
        alpha = Fraction(alpha)
        if alpha < self.lo:
            return False
        return self.hi is None or alpha <= self.hi

    def render(self) -> str:
        hi = "inf" if self.hi is None else format_rational(self.hi)
        close = ")" if self.hi is None else "]"
        return f"[{format_rational(self.lo)}, {hi}{close}"


@dataclass(frozen=True)
class SubtripleShape:
    """Numerical data (n1', n2', d') of a proper subtriple; d' = d1' + d2'."""
    n1p: int
    n2p: int
    dp: int


class Orientation(enum.Enum):
    GammaZero = "GammaZero"
    BetaZero = "BetaZero"
    Both = "Both"


@dataclass(frozen=True)
class HiggsTripleCorrespondence:
    orientation: Orientation
    triples: tuple

    @property
    def triple(self) -> TripleType:
        return self.triples[0]


class Position(enum.Enum):
    Interior = "Interior"
    AtAlphaMin = "AtAlphaMin"
    AtAlphaMax = "AtAlphaMax"
    AtAlphaMinZero_pEQq = "AtAlphaMinZero_pEQq"
    Outside = "Outside"


class Regime(enum.Enum):
    AtAlphaMin = "AtAlphaMin"
    GenericLarge = "GenericLarge"
    AtAlphaMax = "AtAlphaMax"
    EqualRanksSmallGap = "EqualRanksSmallGap"


def mu_alpha(t: TripleType, alpha) -> Fraction:
    return (t.d + Fraction(alpha) * t.n2) / t.n


def alpha_range(t: TripleType) -> AlphaInterval:
    lo = t.mu1 - t.mu2
    if t.n1 == t.n2:
        return AlphaInterval(lo, None)
    hi = (1 + Fraction(t.n, abs(t.n1 - t.n2))) * lo
    return AlphaInterval(lo, hi)


def higgs_to_triple(sig: Signature, curve: Curve,
                    inv: InvariantPair) -> HiggsTripleCorrespondence:
    """Triple type(s) whose (2g-2)-moduli model the minima of the component.

    tau <= 0 gives gamma = 0 and the type (p, q, a + p(2g-2), b); tau >= 0
    gives beta = 0 and the type (q, p, b + q(2g-2), a).  At tau = 0 both
    descriptions apply.
    """
    tau = toledo(sig, inv)
    k2 = curve.degK
    gamma_zero = TripleType(sig.p, sig.q, inv.a + sig.p * k2, inv.b)
    beta_zero = TripleType(sig.q, sig.p, inv.b + sig.q * k2, inv.a)
    if tau < 0:
        return HiggsTripleCorrespondence(Orientation.GammaZero, (gamma_zero,))
    if tau > 0:
        return HiggsTripleCorrespondence(Orientation.BetaZero, (beta_zero,))
    return HiggsTripleCorrespondence(Orientation.Both, (gamma_zero, beta_zero))


def alpha_bounds_for_toledo(sig: Signature, curve: Curve, tau) -> AlphaInterval:
    lo = curve.degK - Fraction(sig.n, 2 * sig.p * sig.q) * abs(Fraction(tau))
    if sig.p == sig.q:
        return AlphaInterval(lo, None)
    return AlphaInterval(lo, Fraction(2 * sig.rank_max, abs(sig.p - sig.q)) * lo)


def alpha_bounds_from_higgs(sig: Signature, curve: Curve,
                            inv: InvariantPair) -> AlphaInterval:
    """alpha_m and alpha_M written in terms of the Toledo invariant."""
    return alpha_bounds_for_toledo(sig, curve, toledo(sig, inv))


def _locate(sig: Signature, curve: Curve, bounds: AlphaInterval) -> Position:
    m = curve.degK
    lo, hi = bounds.lo, bounds.hi
    if sig.p != sig.q:
        inside = 0 < lo <= m <= hi
    else:
        inside = 0 <= lo <= m
    if not inside:
        return Position.Outside
    if lo == m:
        return Position.AtAlphaMin
    if sig.p != sig.q and hi == m:
        return Position.AtAlphaMax
    if sig.p == sig.q and lo == 0:
        return Position.AtAlphaMinZero_pEQq
    return Position.Interior


def position_of_2g2(sig: Signature, curve: Curve, inv: InvariantPair) -> Position:
    """Where 2g-2 sits relative to [alpha_m, alpha_M] for the component's triples."""
    return _locate(sig, curve, alpha_bounds_from_higgs(sig, curve, inv))


@dataclass(frozen=True)
class AlphaSweepRow:
    t: int
    tau: Fraction
    bounds: AlphaInterval
    position: Position


def alpha_sweep(sig: Signature, curve: Curve, overshoot: int = 1) -> list:
    """Tabulate alpha_m, alpha_M and the position of 2g-2 against tau.

    tau runs over (2k/n)Z from -tau_M to tau_M, plus ``overshoot`` steps
    beyond each end so the Milnor-Wood cut-off shows up in the table.
    """
    step = Fraction(2 * sig.k, sig.n)
    t_max = int(toledo_max(sig, curve) / step)
    rows = []
    for t in range(-t_max - overshoot, t_max + overshoot + 1):
        tau = t * step
        bounds = alpha_bounds_for_toledo(sig, curve, tau)
        rows.append(AlphaSweepRow(t, tau, bounds, _locate(sig, curve, bounds)))
    return rows


def _solve_alpha(t: TripleType, n1p: int, n2p: int, dp: int, denom: int) -> Fraction:
    return Fraction((n1p + n2p) * t.d - t.n * dp, denom)


def _shape_denominator(t: TripleType, n1p: int, n2p: int) -> int:
    return n2p * t.n - t.n2 * (n1p + n2p)


def subtriple_ranks(t: TripleType):
    """All rank pairs (n1', n2') of proper non-zero subtriples."""
    for n1p in range(t.n1 + 1):
        for n2p in range(t.n2 + 1):
            if 0 < n1p + n2p < t.n:
                yield n1p, n2p


def critical_shapes(t: TripleType, window_hi):
    """Yield (alpha, shape) for every wall strictly inside the effective window.

    The window is (alpha_m, window_hi], further cut to alpha < alpha_M when
    n1 != n2.  Shapes are numerical only, so the result may contain values
    that no geometric subtriple realizes.
    """
    window_hi = Fraction(window_hi)
    rng = alpha_range(t)
    lo = rng.lo
    if window_hi <= lo:
        raise ValueError(f"window {format_rational(window_hi)} must exceed "
                         f"alpha_m = {format_rational(lo)}")
    slope = Fraction(t.d, t.n)
    for n1p, n2p in subtriple_ranks(t):
        denom = _shape_denominator(t, n1p, n2p)
        if denom == 0:
            continue
        nprime = n1p + n2p
        # invert alpha(dp) at both window ends; alpha is monotone in dp
        ends = [(nprime * t.d - a * denom) / t.n for a in (lo, window_hi)]
        for dp in range(floor(min(ends)), ceil(max(ends)) + 1):
            if Fraction(dp, nprime) == slope:
                continue
            alpha = _solve_alpha(t, n1p, n2p, dp, denom)
            if not lo < alpha <= window_hi:
                continue
            if rng.hi is not None and alpha >= rng.hi:
                continue
            yield alpha, SubtripleShape(n1p, n2p, dp)


def critical_values(t: TripleType, window_hi) -> list:
    return sorted({alpha for alpha, _ in critical_shapes(t, window_hi)})


def gcd_noncritical_test(t: TripleType, m: int) -> bool:
    """True when GCD(n1+n2, d1+d2-m*n1) = 1, which certifies alpha=m is not critical."""
    return gcd(t.n, t.d - m * t.n1) == 1


def alpha_independent_possible(t: TripleType) -> bool:
    """False when GCD(n2, n1+n2, d1+d2) = 1 rules out alpha-independent semistability.

    GCD(n1, n1+n2, .) is the same number, since gcd(n1, n) = gcd(n2, n).
    """
    return gcd(gcd(t.n2, t.n), t.d) != 1


@dataclass(frozen=True)
class TripleModuliDescriptor:
    regime: Regime
    nonempty: bool
    irreducible: bool
    product_description: str
    fiber_dim: int | None = None
    dimension: int | None = None


def _M(rank, degree, stable=False):
    return f"M{'^s' if stable else ''}({rank},{degree})"


def moduli_descriptor(t: TripleType, curve: Curve, where: Regime,
                      alpha=None) -> TripleModuliDescriptor:
    """What is known about the triple moduli space in a given alpha regime.

    ``alpha`` is optional and only used to check the regime's hypotheses.
    """
    where = Regime(where)
    n1, n2, d1, d2 = t.as_tuple()
    rng = alpha_range(t)
    if alpha is not None:
        alpha = Fraction(alpha)

    if where is Regime.AtAlphaMin:
        return TripleModuliDescriptor(where, True, True,
                                      f"{_M(n1, d1)} x {_M(n2, d2)}")

    if where is Regime.AtAlphaMax:
        if n1 == n2:
            raise ValueError("AtAlphaMax needs n1 != n2")
        if n1 > n2:
            desc = f"{_M(n2, d2)} x {_M(n1 - n2, d1 - d2)}"
        else:
            desc = f"{_M(n1, d1)} x {_M(n2 - n1, d2 - d1)}"
        return TripleModuliDescriptor(where, True, True, desc)

    if where is Regime.EqualRanksSmallGap:
        if n1 != n2:
            raise ValueError("EqualRanksSmallGap needs n1 == n2")
        if d1 == d2:
            if alpha is not None and alpha <= 0:
                raise ValueError("equal degrees need alpha > 0")
            return TripleModuliDescriptor(where, True, True, _M(n1, d1))
        if d1 < d2:
            raise ValueError("EqualRanksSmallGap needs d1 >= d2")
        if alpha is not None and not d1 - d2 < alpha:
            raise ValueError("EqualRanksSmallGap needs d1 - d2 < alpha")
        return TripleModuliDescriptor(where, True, True,
                                      f"irreducible, alpha > {d1 - d2}")

    # GenericLarge: alpha_m < alpha, 2g-2 <= alpha, alpha < alpha_M if n1 != n2
    if alpha is not None:
        ok = rng.lo < alpha and curve.degK <= alpha
        if rng.hi is not None:
            ok = ok and alpha < rng.hi
        if not ok:
            raise ValueError(f"alpha={format_rational(alpha)} outside the generic large range")
    gm1 = curve.g - 1
    if n1 == n2:
        fiber = n1 * (d1 - d2) - 1
        base = f"{_M(n1, d2, True)} x Sym^{d1 - d2}(X)"
        return TripleModuliDescriptor(where, True, True,
                                      f"P^{fiber}-fibration over {base} (birational)",
                                      fiber_dim=fiber)
    if n1 > n2:
        fiber = n2 * d1 - n1 * d2 + n2 * (n1 - n2) * gm1 - 1
        base = f"{_M(n1 - n2, d1 - d2, True)} x {_M(n2, d2, True)}"
        base_dim = bundle_moduli_dim(n1 - n2, curve) + bundle_moduli_dim(n2, curve)
    else:
        fiber = n2 * d1 - n1 * d2 + n1 * (n2 - n1) * gm1 - 1
        base = f"{_M(n2 - n1, d2 - d1, True)} x {_M(n1, d1, True)}"
        base_dim = bundle_moduli_dim(n2 - n1, curve) + bundle_moduli_dim(n1, curve)
    dim = triple_moduli_dim(t, curve)
    assert fiber + base_dim == dim
    return TripleModuliDescriptor(where, True, True,
                                  f"P^{fiber}-fibration over {base} (birational)",
                                  fiber_dim=fiber, dimension=dim)
