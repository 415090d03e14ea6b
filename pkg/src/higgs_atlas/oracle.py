"""
Brute-force verification suites.

Each suite recomputes a quantity by a route that does not go through the
closed form it is checking: class enumeration against the component-count
formula, Euler characteristics of Hom bundles against the expected
dimension, direct subtriple scans against the GCD non-criticality test.
Reports are deterministic for a given grid and seed.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from . import atlas, invariants, morse, triples
from ._pool import ordered_map
from .invariants import Curve, InvariantPair, Signature, format_rational
from .morse import HodgeSystem, MinimumVerdict, Sector, Summand

SUITES = ("counts", "alpha", "critical", "dims", "morse")


@dataclass(frozen=True)
class GridSpec:
    p_max: int = 3
    q_max: int = 3
    g_max: int = 3
    t_window: int = 6
    alpha_window: Fraction = Fraction(4)
    seed: int = 0
    morse_samples: int = 500

    def __post_init__(self):
        if self.p_max < 1 or self.q_max < 1:
            raise ValueError("p_max and q_max must be at least 1")
        if self.g_max < 2:
            raise ValueError("g_max must be at least 2")

    def cases(self):
        for p in range(1, self.p_max + 1):
            for q in range(1, self.q_max + 1):
                for g in range(2, self.g_max + 1):
                    yield p, q, g

    def as_json(self) -> dict:
        return {"p_max": self.p_max, "q_max": self.q_max, "g_max": self.g_max,
                "t_window": self.t_window,
                "alpha_window": format_rational(self.alpha_window),
                "seed": self.seed, "morse_samples": self.morse_samples}


@dataclass
class VerifyReport:
    suite: str
    cases: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str, **inputs):
        self.checks += 1
        if not ok:
            self.failures.append({"check": what, "input": inputs})

    def merge(self, other: "VerifyReport"):
        self.cases += other.cases
        self.checks += other.checks
        self.failures.extend(other.failures)

    def as_json(self) -> dict:
        # elapsed time is left out so reports compare byte for byte
        return {"suite": self.suite, "passed": self.passed, "cases": self.cases,
                "checks": self.checks,
                "failures": self.failures}


def _timed(suite):
    def wrap(fn):
        def run(grid: GridSpec) -> VerifyReport:
            start = time.perf_counter()
            rep = VerifyReport(suite)
            for part in ordered_map(lambda case: fn(grid, case), list(_suite_cases(suite, grid))):
                rep.merge(part)
            rep.elapsed = time.perf_counter() - start
            return rep
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _suite_cases(suite, grid):
    if suite == "morse":
        return [("random", grid.seed), ("odd-chains", grid.seed), ("two-step", None)]
    return list(grid.cases())


def _classes(p: int, q: int, g: int) -> list:
    """Classes [a,b] with |tau| <= tau_M, represented with 0 <= a < p.

    Works straight from |2(qa - pb)/(p+q)| <= min(p,q)(2g-2), without the
    fundamental region.
    """
    n = p + q
    tau_max = min(p, q) * (2 * g - 2)
    reach = n * tau_max
    out = []
    for a in range(p):
        for b in range(-reach - 1, reach + 2):
            if abs(2 * (q * a - p * b)) <= reach:
                out.append((a, b))
    return out


@_timed("counts")
def verify_counts(grid: GridSpec, case) -> VerifyReport:
    """Region size against the count formula and against the classes themselves."""
    rep = VerifyReport("counts", cases=1)
    p, q, g = case
    if case == (2, 4, 2):
        _check_counterexample(rep)
    sig, curve = Signature(p, q), Curve(g)
    spec = atlas.RegionSpec(sig, curve)
    k, n = gcd(p, q), p + q
    classes = _classes(p, q, g)
    formula = atlas.component_count_formula(sig, curve)
    region = atlas.enumerate_region(spec)
    rep.check(len(classes) == formula, "class count = formula", p=p, q=q, g=g,
              classes=len(classes), formula=formula)
    rep.check(len(region) == formula, "region size = formula", p=p, q=q, g=g,
              region=len(region), formula=formula)
    # bijection: region points land on distinct classes, covering all of them
    normalized = set()
    for x in region:
        l = -(x.a // p)
        normalized.add((x.a + l * p, x.b + l * q))
    rep.check(normalized == set(classes), "region <-> classes bijection", p=p, q=q, g=g)

    lines = {}
    for x in region:
        diff = x.a * q - x.b * p
        lines.setdefault(diff // k, []).append(x)
    t_top = n * min(p, q) * (g - 1) // k
    rep.check(sorted(lines) == list(range(-t_top, t_top + 1)), "lines in range", p=p, q=q, g=g)
    for t, pts in sorted(lines.items()):
        fiber = atlas.tau_fiber(spec, t)
        taus = {Fraction(2 * (q * x.a - p * x.b), n) for x in pts}
        rep.check(len(pts) == k and taus == {Fraction(2 * k * t, n)}
                  and set(fiber.points) == set(pts),
                  "fiber has k points at tau = 2kt/n", p=p, q=q, g=g, t=t)
        nk = n // k
        small = {gcd(x.d, nk) for x in pts}
        ok = len(small) == 1
        if ok and small != {1}:
            ok = all(gcd(x.d, n) != 1 for x in pts)
        rep.check(ok, "gcd(d, n/k) constant on fiber, non-coprimality spreads",
                  p=p, q=q, g=g, t=t)
    d_min = min(x.a + x.b for x in region)
    rep.check(d_min == -n * (g - 1), "d_min = -n(g-1)", p=p, q=q, g=g, d_min=d_min)

    seq = atlas.exact_sequence_check(spec, grid.t_window)
    rep.check(seq.passed, "tau exact sequence", p=p, q=q, g=g, t_window=grid.t_window)
    return rep


def _check_counterexample(rep: VerifyReport):
    spec = atlas.RegionSpec(Signature(2, 4), Curve(2))
    fiber = atlas.tau_fiber(spec, -2)
    pts = sorted((x.a, x.b) for x in fiber.points)
    rep.check(pts == [(-1, 0), (0, 2)], "p=2,q=4,t=-2 fiber", points=pts)
    rep.check(gcd(-1 + 0, 6 // 2) == 1 and gcd(0 + 2, 6) == 2,
              "coprime with n/k at (-1,0) but GCD 2 with n at (0,2)")


def _own_triples(p, q, g, a, b):
    """Triple types built by hand, one or two depending on the sign of qa - pb."""
    s = q * a - p * b
    out = []
    if s <= 0:
        out.append((p, q, a + p * (2 * g - 2), b))
    if s >= 0:
        out.append((q, p, b + q * (2 * g - 2), a))
    return out


def _own_alpha_range(n1, n2, d1, d2):
    lo = Fraction(d1, n1) - Fraction(d2, n2)
    hi = None if n1 == n2 else lo * (n1 + n2 + abs(n1 - n2)) / abs(n1 - n2)
    return lo, hi


@_timed("alpha")
def verify_alpha_consistency(grid: GridSpec, case) -> VerifyReport:
    """Toledo-side alpha bounds against the triple-side bounds, and where 2g-2 lands."""
    rep = VerifyReport("alpha", cases=1)
    p, q, g = case
    sig, curve = Signature(p, q), Curve(g)
    spec = atlas.RegionSpec(sig, curve)
    m = 2 * g - 2
    tau_max = min(p, q) * m
    # a strip beyond the Milnor-Wood lines exercises the Outside case too
    pts = list(atlas.enumerate_region(spec))
    pts += [InvariantPair(a, b) for a, b in ((p * (m + 1), 0), (0, q * (m + 1)))]
    for x in pts:
        a, b = x.a, x.b
        tau = Fraction(2 * (q * a - p * b), p + q)
        bounds = triples.alpha_bounds_from_higgs(sig, curve, x)
        corr = triples.higgs_to_triple(sig, curve, x)
        own = _own_triples(p, q, g, a, b)
        rep.check([t.as_tuple() for t in corr.triples] == own, "triple types",
                  p=p, q=q, g=g, a=a, b=b)
        for t in own:
            lo, hi = _own_alpha_range(*t)
            rng = triples.alpha_range(triples.TripleType(*t))
            rep.check(bounds.lo == lo == rng.lo and bounds.hi == hi == rng.hi,
                      "alpha bounds agree", p=p, q=q, g=g, a=a, b=b, triple=list(t))
            mu_alpha = Fraction(t[2] + t[3] + m * t[1], t[0] + t[1])
            rep.check(mu_alpha == Fraction(a + b, p + q) + m
                      == triples.mu_alpha(triples.TripleType(*t), m),
                      "mu_alpha(T) = mu(E) + 2g-2 at alpha = 2g-2",
                      p=p, q=q, g=g, a=a, b=b)
        pos = triples.position_of_2g2(sig, curve, x)
        P = triples.Position
        mw = abs(tau) <= tau_max
        checks = [
            ((pos is P.Outside) == (not mw), "Outside iff Milnor-Wood fails"),
            ((pos is P.AtAlphaMin) == (mw and tau == 0), "AtAlphaMin iff tau = 0"),
            ((pos is P.AtAlphaMax) == (abs(tau) == tau_max and p != q),
             "AtAlphaMax iff |tau| = tau_M, p != q"),
            ((pos is P.AtAlphaMinZero_pEQq) == (abs(tau) == tau_max and p == q),
             "alpha_m = 0 iff |tau| = tau_M, p = q"),
        ]
        if mw:
            if p != q:
                inside = 0 < bounds.lo <= m <= bounds.hi
            else:
                inside = 0 <= bounds.lo <= m
            checks.append((inside, "2g-2 in the alpha range"))
            checks.append(((bounds.lo == m) == (tau == 0), "2g-2 = alpha_m iff tau = 0"))
            if p != q:
                checks.append(((bounds.hi == m) == (abs(tau) == tau_max),
                               "2g-2 = alpha_M iff |tau| = tau_M"))
            else:
                checks.append(((bounds.lo == 0) == (abs(tau) == tau_max),
                               "alpha_m = 0 iff |tau| = tau_M"))
        for ok, what in checks:
            rep.check(ok, what, p=p, q=q, g=g, a=a, b=b, position=pos.value)
    return rep


def brute_force_is_critical(n1, n2, d1, d2, alpha: int) -> bool:
    """Scan every proper subtriple shape for an alpha-slope tie with a different slope."""
    n, d = n1 + n2, d1 + d2
    lhs_total = d + alpha * n2
    reach = abs(d) + 2 * abs(alpha) * n2 + 2
    for n1p in range(n1 + 1):
        for n2p in range(n2 + 1):
            npr = n1p + n2p
            if not 0 < npr < n:
                continue
            for dp in range(-reach, reach + 1):
                if dp * n == d * npr:
                    continue
                if n * (dp + alpha * n2p) == npr * lhs_total:
                    return True
    return False


@_timed("critical")
def verify_critical_gcd(grid: GridSpec, case) -> VerifyReport:
    """alpha = 2g-2 is never a wall when GCD(n1+n2, d1+d2-(2g-2)n1) = 1."""
    rep = VerifyReport("critical", cases=1)
    p, q, g = case
    sig, curve = Signature(p, q), Curve(g)
    m = 2 * g - 2
    if case == (1, 1, 2):
        _check_fixed_critical(rep)
    seen = set()
    for x in atlas.enumerate_region(atlas.RegionSpec(sig, curve)):
        for t in _own_triples(p, q, g, x.a, x.b):
            if t in seen:
                continue
            seen.add(t)
            tt = triples.TripleType(*t)
            wall = brute_force_is_critical(*t, m)
            if triples.gcd_noncritical_test(tt, m):
                rep.check(not wall, "gcd test certifies 2g-2 non-critical",
                          p=p, q=q, g=g, triple=list(t))
            lo, hi = _own_alpha_range(*t)
            if lo < m:
                listed = Fraction(m) in triples.critical_values(tt, m)
                expect = wall and (hi is None or m < hi)
                rep.check(listed == expect, "critical_values agrees with brute force at 2g-2",
                          p=p, q=q, g=g, triple=list(t))
    return rep


def _check_fixed_critical(rep: VerifyReport):
    t = triples.TripleType(1, 1, 2, 1)
    got = triples.critical_values(t, 10)
    brute = [a for a in range(2, 11) if brute_force_is_critical(1, 1, 2, 1, a)]
    rep.check(got == [3, 5, 7, 9] == brute, "(1,1,2,1) critical set in (1,10]",
              got=[format_rational(v) for v in got])
    t0 = triples.TripleType(1, 1, 2, 0)
    rep.check(not triples.gcd_noncritical_test(t0, 2)
              and brute_force_is_critical(1, 1, 2, 0, 2),
              "(1,1,2,0) is critical at alpha = 2")


@_timed("dims")
def verify_dimensions(grid: GridSpec, case) -> VerifyReport:
    rep = VerifyReport("dims", cases=1)
    p, q, g = case
    sig, curve = Signature(p, q), Curve(g)
    expected = invariants.expected_dim_higgs(sig, curve)
    rep.check(morse.deformation_dim(sig, curve) == expected,
              "Euler-characteristic dimension = 1 + n^2(g-1)", p=p, q=q, g=g)
    if p != q:
        lo, hi = min(p, q), max(p, q)
        factors = (1 + (2 * lo) ** 2 * (g - 1)) + (1 + (hi - lo) ** 2 * (g - 1))
        rd = invariants.rigid_dim(sig, curve)
        rep.check(rd == factors, "rigid dimension = sum of factor dimensions",
                  p=p, q=q, g=g, rigid=rd, factors=factors)
        rep.check(rd < expected, "rigid dimension below expected", p=p, q=q, g=g)
        # large-alpha triple moduli: fiber plus base = total
        t = triples.TripleType(q, p, q * (2 * g - 2), 0)
        desc = triples.moduli_descriptor(t, curve, triples.Regime.GenericLarge)
        n1, n2 = t.n1, t.n2
        base = (1 + (n1 - n2) ** 2 * (g - 1)) + (1 + n2 * n2 * (g - 1)) if n1 > n2 \
            else (1 + (n2 - n1) ** 2 * (g - 1)) + (1 + n1 * n1 * (g - 1))
        rep.check(desc.fiber_dim + base == invariants.triple_moduli_dim(t, curve),
                  "triple fibration dimension", p=p, q=q, g=g)
    return rep


def _random_system(rng: random.Random, alternating: bool) -> HodgeSystem:
    length = rng.randint(1, 6)
    sector = rng.choice([Sector.V, Sector.W])
    out = []
    for _ in range(length):
        out.append(Summand(rng.randint(1, 3), rng.randint(-5, 5), sector))
        if alternating:
            sector = Sector.W if sector is Sector.V else Sector.V
        else:
            sector = rng.choice([Sector.V, Sector.W])
    return HodgeSystem(tuple(out))


def _pair_sums(h: HodgeSystem, k: int):
    """U_k recomputed from scratch: (rank, degree) split by sector parity."""
    plus = [0, 0]
    minus = [0, 0]
    s = h.summands
    for j, i in product(range(len(s)), repeat=2):
        if i - j != k:
            continue
        target = plus if s[i].sector == s[j].sector else minus
        target[0] += s[i].rank * s[j].rank
        target[1] += s[j].rank * s[i].degree - s[i].rank * s[j].degree
    return tuple(plus), tuple(minus)


def _morse_identities(rep: VerifyReport, h: HodgeSystem, curve: Curve):
    m = h.length
    ks = range(-m + 1, m)
    levels = {k: morse.adjoint_level(h, k) for k in range(-m - 1, m + 2)}
    tag = dict(system=h.render(), g=curve.g)
    rep.check(sum(levels[k].rank for k in ks) == h.total_rank ** 2, "sum rk U_k = n^2", **tag)
    rep.check(sum(levels[k].degree for k in ks) == 0, "sum deg U_k = 0", **tag)
    rep.check(all(levels[k].rank == 0 for k in (-m, m)), "U_k = 0 for |k| >= m", **tag)
    rep.check(all(levels[k].rank == levels[-k].rank and levels[k].degree == -levels[-k].degree
                  for k in ks), "duality U_k ~ U_-k^*", **tag)
    rep.check(all(((levels[k].rank_plus, levels[k].deg_plus),
                   (levels[k].rank_minus, levels[k].deg_minus)) == _pair_sums(h, k)
                  for k in ks), "levels match pair sums", **tag)
    if h.is_alternating():
        rep.check(all((levels[k].rank_minus == 0 if k % 2 == 0 else levels[k].rank_plus == 0)
                      for k in ks), "parity split on alternating chains", **tag)
    lam = morse.weights(h)
    rep.check(all(y - x == 1 for x, y in zip(lam, lam[1:]))
              and sum(l * r for l, r in zip(lam, h.ranks)) == 0, "weights", **tag)
    own_index = 0
    for k in range(1, m):
        (rp, dp), _ = _pair_sums(h, k)
        _, (rm, dm) = _pair_sums(h, k + 1)
        chi = (1 - curve.g) * (rp + rm) + dp - dm
        own_index += max(0, -chi)
    rep.check(morse.morse_index(h, curve) == own_index, "Morse index = sum of -chi", **tag)


@_timed("morse")
def verify_morse_axioms(grid: GridSpec, case) -> VerifyReport:
    rep = VerifyReport("morse")
    kind, seed = case
    genera = range(2, grid.g_max + 1)
    if kind == "random":
        rng = random.Random(seed)
        for i in range(grid.morse_samples):
            h = _random_system(rng, alternating=(i % 2 == 0))
            _morse_identities(rep, h, Curve(rng.choice(genera)))
            rep.cases += 1
    elif kind == "odd-chains":
        # every alternating 3-chain with ranks 1..2 and degrees -1..1, and
        # seeded samples of 5-chains
        for g in genera:
            curve = Curve(g)
            for start in (Sector.V, Sector.W):
                other = Sector.W if start is Sector.V else Sector.V
                for ranks in product((1, 2), repeat=3):
                    for degs in product((-1, 0, 1), repeat=3):
                        h = HodgeSystem(tuple(Summand(r, d, s) for r, d, s in
                                              zip(ranks, degs, (start, other, start))))
                        rep.check(morse.minimum_numeric_test(h, curve) is MinimumVerdict.NotMinimum,
                                  "odd alternating chain is not a minimum",
                                  system=h.render(), g=g)
                        rep.cases += 1
        rng = random.Random(seed + 1)
        for _ in range(200):
            start = rng.choice([Sector.V, Sector.W])
            other = Sector.W if start is Sector.V else Sector.V
            secs = (start, other, start, other, start)
            h = HodgeSystem(tuple(Summand(rng.randint(1, 3), rng.randint(-5, 5), s)
                                  for s in secs))
            g = rng.choice(genera)
            rep.check(morse.minimum_numeric_test(h, Curve(g)) is MinimumVerdict.NotMinimum,
                      "odd alternating chain is not a minimum", system=h.render(), g=g)
            rep.cases += 1
    else:
        for g in genera:
            curve = Curve(g)
            for r1, r2 in product(range(1, 4), repeat=2):
                for d1, d2 in product(range(-5, 6), repeat=2):
                    for s1, s2 in ((Sector.V, Sector.W), (Sector.W, Sector.V)):
                        h = HodgeSystem((Summand(r1, d1, s1), Summand(r2, d2, s2)))
                        rep.check(morse.morse_index(h, curve) == 0 and
                                  morse.minimum_numeric_test(h, curve)
                                  is MinimumVerdict.CandidateMinimum,
                                  "two-step chain is a minimum of index 0",
                                  system=h.render(), g=g)
                        rep.cases += 1
    return rep


RUNNERS = {
    "counts": verify_counts,
    "alpha": verify_alpha_consistency,
    "critical": verify_critical_gcd,
    "dims": verify_dimensions,
    "morse": verify_morse_axioms,
}


def run_suites(names, grid: GridSpec) -> list:
    return [RUNNERS[name](grid) for name in names]


def combined_json(reports, grid: GridSpec) -> dict:
    return {"grid": grid.as_json(),
            "passed": all(r.passed for r in reports),
            "suites": [r.as_json() for r in reports]}
