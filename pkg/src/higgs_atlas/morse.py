"""
Fixed points of the circle action, seen through ranks and degrees only.

A fixed point is a chain of Hodge bundles E = F_1 + ... + F_m, each summand
lying in V or in W, with the Higgs field mapping F_i into F_{i+1} (x) K.
End(E) splits into weight spaces

    U_k = sum over i - j = k of Hom(F_j, F_i)

and each U_k splits again into the part preserving V and W (U_k^+) and the
part exchanging them (U_k^-).  The Hessian of the Higgs-field norm has its
-k eigenspace equal to H^1 of U_k^+ -> U_{k+1}^- (x) K; with the vanishing of
H^0 and H^2 at stable points its dimension is minus an Euler characteristic,
which Riemann-Roch gives in terms of ranks and degrees.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .invariants import Curve, InvariantPair, Signature, toledo


class Sector(enum.Enum):
    V = "V"
    W = "W"


@dataclass(frozen=True)
class Summand:
    rank: int
    degree: int
    sector: Sector

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"summand rank must be positive, got {self.rank}")
        object.__setattr__(self, "sector", Sector(self.sector))

    def render(self) -> str:
        return f"{self.rank}:{self.degree}:{self.sector.value}"


@dataclass(frozen=True)
class HodgeSystem:
    summands: tuple

    def __post_init__(self):
        summands = tuple(s if isinstance(s, Summand) else Summand(*s)
                         for s in self.summands)
        if not summands:
            raise ValueError("a system of Hodge bundles needs at least one summand")
        object.__setattr__(self, "summands", summands)

    @classmethod
    def parse(cls, text: str) -> "HodgeSystem":
        """Parse ``rank:degree:sector`` entries separated by commas."""
        entries = []
        for chunk in text.split(","):
            parts = chunk.strip().split(":")
            if len(parts) != 3:
                raise ValueError(f"malformed summand {chunk.strip()!r}; "
                                 "expected rank:degree:sector")
            rank, degree, sector = parts
            try:
                entries.append(Summand(int(rank), int(degree), Sector(sector.strip().upper())))
            except ValueError as exc:
                raise ValueError(f"malformed summand {chunk.strip()!r}: {exc}") from None
        return cls(tuple(entries))

    def render(self) -> str:
        return ",".join(s.render() for s in self.summands)

    @property
    def length(self) -> int:
        return len(self.summands)

    @property
    def ranks(self):
        return [s.rank for s in self.summands]

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def is_alternating(self) -> bool:
        return all(x.sector != y.sector for x, y in zip(self.summands, self.summands[1:]))

    def sector_totals(self) -> InvariantPair:
        """Degrees (deg V, deg W) of the two sectors."""
        a = sum(s.degree for s in self.summands if s.sector is Sector.V)
        b = sum(s.degree for s in self.summands if s.sector is Sector.W)
        return InvariantPair(a, b)

    def sector_ranks(self):
        p = sum(s.rank for s in self.summands if s.sector is Sector.V)
        q = sum(s.rank for s in self.summands if s.sector is Sector.W)
        return p, q


@dataclass(frozen=True)
class AdjointLevel:
    k: int
    rank_plus: int = 0
    deg_plus: int = 0
    rank_minus: int = 0
    deg_minus: int = 0

    @property
    def rank(self) -> int:
        return self.rank_plus + self.rank_minus

    @property
    def degree(self) -> int:
        return self.deg_plus + self.deg_minus


class MinimumVerdict(enum.Enum):
    NotMinimum = "NotMinimum"
    CandidateMinimum = "CandidateMinimum"


def euler_characteristic(rank: int, degree: int, curve: Curve) -> int:
    """Riemann-Roch on a curve: chi = deg + rank (1 - g)."""
    return degree + rank * (1 - curve.g)


def weights(h: HodgeSystem) -> list:
    """Eigenvalues of the trace-free infinitesimal gauge transformation.

    Consecutive summands differ by one and sum(lambda_i * r_i) = 0.
    """
    ranks = h.ranks
    first = -Fraction(sum(i * r for i, r in enumerate(ranks)), sum(ranks))
    lam = [first + i for i in range(len(ranks))]
    assert sum(l * r for l, r in zip(lam, ranks)) == 0
    return lam


def adjoint_level(h: HodgeSystem, k: int) -> AdjointLevel:
    rp = dp = rm = dm = 0
    s = h.summands
    for j in range(len(s)):
        i = j + k
        if not 0 <= i < len(s):
            continue
        src, dst = s[j], s[i]
        rank = src.rank * dst.rank
        deg = src.rank * dst.degree - dst.rank * src.degree
        if src.sector is dst.sector:
            rp += rank
            dp += deg
        else:
            rm += rank
            dm += deg
    return AdjointLevel(k, rp, dp, rm, dm)


def chi_k(h: HodgeSystem, k: int, curve: Curve) -> int:
    """Euler characteristic of U_k^+ -> U_{k+1}^- (x) K."""
    plus = adjoint_level(h, k)
    minus = adjoint_level(h, k + 1)
    return ((1 - curve.g) * (plus.rank_plus + minus.rank_minus)
            + plus.deg_plus - minus.deg_minus)


def hessian_dim(h: HodgeSystem, k: int, curve: Curve) -> int:
    """Dimension of the -k eigenspace of the Hessian, assuming stability.

    Levels with positive Euler characteristic cannot occur for polystable
    fixed points; they are clamped to 0 here and reported by
    :func:`unrealizable_levels`.
    """
    if k <= 0:
        raise ValueError(f"Hessian levels start at k=1, got k={k}")
    return max(0, -chi_k(h, k, curve))


def unrealizable_levels(h: HodgeSystem, curve: Curve) -> list:
    return [k for k in range(1, h.length) if chi_k(h, k, curve) > 0]


def morse_index(h: HodgeSystem, curve: Curve) -> int:
    """Sum of the Hessian eigenspace dimensions over k >= 1 (complex dimension)."""
    return sum(hessian_dim(h, k, curve) for k in range(1, h.length))


def minimum_numeric_test(h: HodgeSystem, curve: Curve) -> MinimumVerdict:
    """Necessary condition for a local minimum.

    ad(Phi): U_k^+ -> U_{k+1}^- (x) K must be an isomorphism for each k >= 1,
    which forces equal ranks and deg U_k^+ = deg U_{k+1}^- + (2g-2) rk U_{k+1}^-.
    Injectivity failures with matching numbers pass this test.
    """
    for k in range(1, h.length):
        plus = adjoint_level(h, k)
        minus = adjoint_level(h, k + 1)
        if plus.rank_plus == 0 and minus.rank_minus == 0:
            continue
        if plus.rank_plus != minus.rank_minus:
            return MinimumVerdict.NotMinimum
        if plus.deg_plus != minus.deg_minus + curve.degK * minus.rank_minus:
            return MinimumVerdict.NotMinimum
    return MinimumVerdict.CandidateMinimum


def deformation_dim(sig: Signature, curve: Curve) -> int:
    """1 - chi(U^+) + chi(U^- (x) K) for End(V + W), via Riemann-Roch.

    U^+ = End V + End W and U^- = Hom(V, W) + Hom(W, V) are assembled from
    their Hom pieces, so nothing here uses the closed form 1 + n^2 (g-1).
    """
    rk_plus = deg_plus = rk_minus = deg_minus = 0
    two_step = HodgeSystem(((sig.p, 0, Sector.V), (sig.q, 0, Sector.W)))
    for k in range(-1, 2):
        level = adjoint_level(two_step, k)
        rk_plus += level.rank_plus
        deg_plus += level.deg_plus
        rk_minus += level.rank_minus
        deg_minus += level.deg_minus
    chi_plus = euler_characteristic(rk_plus, deg_plus, curve)
    chi_minus_k = euler_characteristic(rk_minus, deg_minus + rk_minus * curve.degK, curve)
    return 1 - chi_plus + chi_minus_k


def canonical_minimum_system(sig: Signature, curve: Curve,
                             inv: InvariantPair) -> HodgeSystem:
    """Two-step chain realizing the minimum of the component.

    tau > 0 means beta = 0 and the chain is V -> W; tau < 0 means gamma = 0
    and the chain is W -> V.  At tau = 0 both maps vanish and either order
    represents the same point; V -> W is returned.
    """
    v = Summand(sig.p, inv.a, Sector.V)
    w = Summand(sig.q, inv.b, Sector.W)
    if toledo(sig, inv) < 0:
        return HodgeSystem((w, v))
    return HodgeSystem((v, w))


@dataclass
class MorseReport:
    system: HodgeSystem
    weights: list
    levels: list
    chis: dict
    hessian: dict
    index: int
    verdict: MinimumVerdict
    unrealizable: list = field(default_factory=list)


def analyse(h: HodgeSystem, curve: Curve) -> MorseReport:
    m = h.length
    levels = [adjoint_level(h, k) for k in range(-m + 1, m)]
    positive = range(1, m)
    return MorseReport(
        system=h,
        weights=weights(h),
        levels=levels,
        chis={k: chi_k(h, k, curve) for k in positive},
        hessian={k: hessian_dim(h, k, curve) for k in positive},
        index=morse_index(h, curve),
        verdict=minimum_numeric_test(h, curve),
        unrealizable=unrealizable_levels(h, curve),
    )
