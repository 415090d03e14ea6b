"""
Discrete invariants of U(p,q)-Higgs bundles over a curve of genus g.

Everything here is exact: integers and :class:`fractions.Fraction`.  The
Toledo invariant of degrees (a, b) = (deg V, deg W) is

    tau = 2 (q a - p b) / (p + q)

and it is bounded in absolute value by tau_M = min(p, q) (2g - 2).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class Signature:
    """Ranks (p, q) of the two summands V and W."""
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise TypeError("ranks must be integers")
        if self.p < 1 or self.q < 1:
            raise ValueError(f"ranks must be positive, got p={self.p}, q={self.q}")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def k(self) -> int:
        return gcd(self.p, self.q)

    @property
    def rank_min(self) -> int:
        return min(self.p, self.q)

    @property
    def rank_max(self) -> int:
        return max(self.p, self.q)


@dataclass(frozen=True)
class Curve:
    """A closed Riemann surface, remembered only through its genus."""
    g: int

    def __post_init__(self):
        if not isinstance(self.g, int):
            raise TypeError("genus must be an integer")
        if self.g < 2:
            raise ValueError(f"genus must be at least 2, got {self.g}")

    @property
    def degK(self) -> int:
        return 2 * self.g - 2


@dataclass(frozen=True)
class InvariantPair:
    """Degrees a = deg V and b = deg W."""
    a: int
    b: int

    @property
    def d(self) -> int:
        return self.a + self.b

    def shifted(self, sig: Signature, l: int) -> "InvariantPair":
        return InvariantPair(self.a + l * sig.p, self.b + l * sig.q)


def format_rational(x) -> str:
    """Render an exact rational as ``num/den`` (or ``num`` when integral)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    return Fraction(text)


def toledo(sig: Signature, inv: InvariantPair) -> Fraction:
    return Fraction(2 * (sig.q * inv.a - sig.p * inv.b), sig.n)


def toledo_max(sig: Signature, curve: Curve) -> Fraction:
    return Fraction(sig.rank_min * curve.degK)


def milnor_wood_ok(sig: Signature, curve: Curve, inv: InvariantPair) -> bool:
    return abs(toledo(sig, inv)) <= toledo_max(sig, curve)


@dataclass(frozen=True)
class SlopeBoundsReport:
    """Outcome of the four rank-refined slope inequalities.

    ``gamma_toledo``/``beta_toledo`` are the Toledo forms
    tau/2 <= rk(gamma)(g-1) and -tau/2 <= rk(beta)(g-1);
    ``gamma_slope``/``beta_slope`` are the equivalent slope forms
    p(mu(V) - mu(E)) <= rk(gamma)(g-1) and q(mu(W) - mu(E)) <= rk(beta)(g-1).
    """
    gamma_toledo: bool
    beta_toledo: bool
    gamma_slope: bool
    beta_slope: bool

    @property
    def all_pass(self) -> bool:
        return self.gamma_toledo and self.beta_toledo and self.gamma_slope and self.beta_slope


def slope_bounds_report(sig: Signature, curve: Curve, inv: InvariantPair,
                        rk_beta: int | None = None,
                        rk_gamma: int | None = None) -> SlopeBoundsReport:
    """Check the slope bounds for given ranks of beta: W -> V K and gamma: V -> W K.

    Ranks default to min(p, q), which recovers the Milnor-Wood inequality.
    """
    m = sig.rank_min
    rk_beta = m if rk_beta is None else rk_beta
    rk_gamma = m if rk_gamma is None else rk_gamma
    for name, r in (("rk_beta", rk_beta), ("rk_gamma", rk_gamma)):
        if not 0 <= r <= m:
            raise ValueError(f"{name}={r} outside [0, {m}]")
    gm1 = curve.g - 1
    half_tau = toledo(sig, inv) / 2
    mu_v = Fraction(inv.a, sig.p)
    mu_w = Fraction(inv.b, sig.q)
    mu_e = Fraction(inv.d, sig.n)
    report = SlopeBoundsReport(
        gamma_toledo=half_tau <= rk_gamma * gm1,
        beta_toledo=-half_tau <= rk_beta * gm1,
        gamma_slope=sig.p * (mu_v - mu_e) <= rk_gamma * gm1,
        beta_slope=sig.q * (mu_w - mu_e) <= rk_beta * gm1,
    )
    assert report.gamma_toledo == report.gamma_slope
    assert report.beta_toledo == report.beta_slope
    return report


def bundle_moduli_dim(rank: int, curve: Curve) -> int:
    """Dimension of the moduli of stable bundles of the given rank."""
    return rank * rank * (curve.g - 1) + 1


def expected_dim_higgs(sig: Signature, curve: Curve) -> int:
    return 1 + sig.n ** 2 * (curve.g - 1)


def rigid_dim(sig: Signature, curve: Curve) -> int:
    """Dimension of a component with maximal Toledo invariant when p != q.

    Such a component splits as a U(m,m) moduli space with maximal Toledo
    invariant times a moduli space of bundles of rank M - m, where
    m = min(p,q) and M = max(p,q).  The dimension is the sum of the two
    factor dimensions, 2 + (5m^2 + M^2 - 2pq)(g - 1).
    """
    if sig.p == sig.q:
        raise ValueError("rigidity factorization needs p != q")
    m, M = sig.rank_min, sig.rank_max
    higgs_part = expected_dim_higgs(Signature(m, m), curve)
    bundle_part = bundle_moduli_dim(M - m, curve)
    total = higgs_part + bundle_part
    assert total == 2 + (5 * m * m + M * M - 2 * sig.p * sig.q) * (curve.g - 1)
    return total


def min_energy(sig: Signature, inv: InvariantPair) -> Fraction:
    """Minimum of the Higgs field L2-norm on the component, |tau|/2."""
    tau = toledo(sig, inv)
    value = abs(tau) / 2
    mu_e = Fraction(inv.d, sig.n)
    if tau <= 0:
        assert value == inv.b - sig.q * mu_e
    if tau >= 0:
        assert value == inv.a - sig.p * mu_e
    return value


def triple_moduli_dim(t, curve: Curve) -> int:
    """Dimension of the alpha-stable triple moduli of type ``t`` for large alpha.

    ``t`` is any object with ``n1, n2, d1, d2`` attributes.  Only valid when
    n1 != n2.
    """
    n1, n2, d1, d2 = t.n1, t.n2, t.d1, t.d2
    if n1 == n2:
        raise ValueError("triple dimension formula only holds for n1 != n2")
    return (curve.g - 1) * (n1 * n1 + n2 * n2 - n1 * n2) - n1 * d2 + n2 * d1 + 1
