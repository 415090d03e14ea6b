"""
Command line interface.

Exit codes: 0 on success, 1 on a verification or computation failure,
2 on a usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import atlas, morse, oracle, render, triples
from .invariants import (Curve, InvariantPair, Signature, format_rational,
                         parse_rational)

log = logging.getLogger("higgs_atlas")


class UsageError(Exception):
    pass


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _genus(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"genus must be at least 2, got {text}")
    return v


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="higgs-atlas",
        description="Exact invariants of U(p,q)-Higgs bundle moduli and their components.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify the component with degrees (a, b)")
    c.add_argument("--p", type=_positive, required=True)
    c.add_argument("--q", type=_positive, required=True)
    c.add_argument("--g", type=_genus, required=True)
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--json", action="store_true")

    a = sub.add_parser("atlas", help="tabulate every component for (p, q, g)")
    a.add_argument("--p", type=_positive, required=True)
    a.add_argument("--q", type=_positive, required=True)
    a.add_argument("--g", type=_genus, required=True)
    a.add_argument("--tsv", metavar="PATH", help="also write the table to PATH")
    a.add_argument("--json", action="store_true")

    for name, helptext in (("triples-alpha", "alpha range of a triple type"),
                           ("triples-critical", "critical values of a triple type")):
        t = sub.add_parser(name, help=helptext)
        t.add_argument("--n1", type=_positive)
        t.add_argument("--n2", type=_positive)
        t.add_argument("--d1", type=int)
        t.add_argument("--d2", type=int)
        t.add_argument("--alpha", type=_rational)
        t.add_argument("--window", type=_rational)
        t.add_argument("--g", type=_genus)
        t.add_argument("--json", action="store_true")
        if name == "triples-alpha":
            t.add_argument("--sweep-tau", action="store_true",
                           help="tabulate the alpha range against tau for --p --q --g")
            t.add_argument("--p", type=_positive)
            t.add_argument("--q", type=_positive)

    m = sub.add_parser("morse", help="Morse data of a system of Hodge bundles")
    m.add_argument("--system", required=True, help="e.g. 1:0:V,1:0:W,1:0:V")
    m.add_argument("--g", type=_genus, required=True)
    m.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="run the brute-force verification suites")
    v.add_argument("--suite", choices=("all",) + oracle.SUITES, default="all")
    v.add_argument("--p-max", type=_positive, default=3)
    v.add_argument("--q-max", type=_positive, default=3)
    v.add_argument("--g-max", type=_genus, default=3)
    v.add_argument("--t-window", type=_positive, default=6)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=_positive, default=500)
    v.add_argument("--json", action="store_true")
    return parser


def _table(rows, out):
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k.ljust(width)}  {v}", file=out)


def _record_rows(rec: atlas.ComponentRecord):
    c = rec.cls
    rows = [("rep (a, b)", f"({c.rep.a}, {c.rep.b})"), ("tau", format_rational(c.tau)),
            ("d", c.d), ("t", c.t), ("coprime", c.coprime), ("nonempty", rec.nonempty)]
    if not rec.nonempty:
        rows.append(("note", "Milnor-Wood inequality fails; no component"))
        return rows
    rows += [
        ("stable locus nonempty", rec.stable_locus_nonempty),
        ("smooth", rec.smooth),
        ("dimension", rec.dimension),
        ("connectedness", rec.connectedness.value),
        ("triples", f"{rec.triple.orientation.value}: "
                    + ", ".join(str(t) for t in rec.triple.triples)),
        ("alpha range", rec.alpha.render()),
        ("min energy", format_rational(rec.min_energy)),
    ]
    r = rec.rigidity
    if isinstance(r, atlas.SplitFactorization):
        m = r.higgs_rank
        rows.append(("rigidity", f"M({m},{m},{r.higgs_degrees[0]},{r.higgs_degrees[1]}) x "
                                 f"M({r.bundle_rank},{r.bundle_degree}) [{r.bundle_sector}]"))
    elif isinstance(r, atlas.TwistedPairs):
        rows.append(("K^2 pairs", f"M_K2({r.rank},{r.degree_v}) = M_K2({r.rank},{r.degree_w}),"
                                  f" fiber rank {r.fiber_rank}"))
    return rows


def cmd_classify(args, out) -> int:
    rec = atlas.classify(Signature(args.p, args.q), Curve(args.g), InvariantPair(args.a, args.b))
    if args.json:
        out.write(render.dumps(render.record_json(rec)))
    else:
        _table(_record_rows(rec), out)
    return 0


def cmd_atlas(args, out) -> int:
    sig, curve = Signature(args.p, args.q), Curve(args.g)
    spec = atlas.RegionSpec(sig, curve)
    records = atlas.build_atlas(spec)
    count = atlas.count_components(spec)
    if len(records) != count:
        raise atlas.InconsistencyError("atlas rows disagree with the component count")
    tsv = render.atlas_tsv(records)
    if args.tsv:
        try:
            with open(args.tsv, "w", newline="\n") as fh:
                fh.write(tsv)
        except OSError as exc:
            print(f"error: cannot write {args.tsv}: {exc}", file=sys.stderr)
            return 1
    if args.json:
        out.write(render.dumps({
            "p": sig.p, "q": sig.q, "g": curve.g, "count": count,
            "count_formula": "2(p+q)min(p,q)(g-1)+GCD(p,q)",
            "components": [render.record_json(r) for r in records]}))
    else:
        out.write(tsv)
        print(f"# components: {count} = 2*{sig.n}*{sig.rank_min}*{curve.g - 1}+{sig.k}",
              file=out)
    return 0


def _triple_from(args) -> triples.TripleType:
    missing = [f"--{k}" for k in ("n1", "n2", "d1", "d2") if getattr(args, k) is None]
    if missing:
        raise UsageError("missing " + ", ".join(missing))
    return triples.TripleType(args.n1, args.n2, args.d1, args.d2)


def _default_window(t, args) -> Fraction:
    lo = triples.alpha_range(t).lo
    if args.window is not None:
        return args.window
    return lo + (4 * args.g if args.g is not None else 8)


def cmd_triples_alpha(args, out) -> int:
    if args.sweep_tau:
        if None in (args.p, args.q, args.g):
            raise UsageError("--sweep-tau needs --p, --q and --g")
        sig, curve = Signature(args.p, args.q), Curve(args.g)
        rows = triples.alpha_sweep(sig, curve)
        if args.json:
            out.write(render.dumps([{"t": r.t, "tau": format_rational(r.tau),
                                     "alpha": render.interval_json(r.bounds),
                                     "position": r.position.value} for r in rows]))
        else:
            print("t\ttau\talpha_m\talpha_M\tposition_of_2g-2", file=out)
            for r in rows:
                hi = "inf" if r.bounds.hi is None else format_rational(r.bounds.hi)
                print(f"{r.t}\t{format_rational(r.tau)}\t{format_rational(r.bounds.lo)}\t"
                      f"{hi}\t{r.position.value}", file=out)
        return 0
    t = _triple_from(args)
    rng = triples.alpha_range(t)
    info = {"type": list(t.as_tuple()), "alpha": render.interval_json(rng),
            "alpha_independent_possible": triples.alpha_independent_possible(t)}
    if args.alpha is not None:
        info["mu_alpha"] = format_rational(triples.mu_alpha(t, args.alpha))
        info["in_range"] = rng.contains(args.alpha)
    if args.json:
        out.write(render.dumps(info))
    else:
        rows = [("type", str(t)), ("alpha range", rng.render()),
                ("nonempty range", not rng.empty),
                ("alpha-independent semistability", "possible" if
                 info["alpha_independent_possible"] else "excluded by GCD")]
        if args.alpha is not None:
            rows += [("mu_alpha", info["mu_alpha"]), ("alpha in range", info["in_range"])]
        _table(rows, out)
    return 0


def cmd_triples_critical(args, out) -> int:
    t = _triple_from(args)
    rng = triples.alpha_range(t)
    window = _default_window(t, args)
    if window <= rng.lo:
        raise UsageError(f"window {format_rational(window)} must exceed "
                         f"alpha_m = {format_rational(rng.lo)}")
    crit = triples.critical_values(t, window)
    ints = range(int(rng.lo) + 1 if rng.lo >= 0 else 0, int(window) + 1)
    gcd_tests = {m: triples.gcd_noncritical_test(t, m) for m in ints if m > rng.lo}
    if args.json:
        out.write(render.dumps({
            "type": list(t.as_tuple()), "alpha": render.interval_json(rng),
            "window": format_rational(window),
            "critical_values": [format_rational(c) for c in crit],
            "numeric_superset": True,
            "gcd_noncritical": {str(m): v for m, v in gcd_tests.items()}}))
    else:
        _table([("type", str(t)), ("alpha range", rng.render()),
                ("window", f"({format_rational(rng.lo)}, {format_rational(window)}]"),
                ("critical values", "{" + ", ".join(format_rational(c) for c in crit) + "}"),
                ("note", "walls from numerical subtriples; may include unrealized values")], out)
        for m_, ok in gcd_tests.items():
            print(f"  alpha={m_}: " + ("not critical (GCD test)" if ok else "GCD test inconclusive"),
                  file=out)
    return 0


def cmd_morse(args, out) -> int:
    try:
        h = morse.HodgeSystem.parse(args.system)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = morse.analyse(h, Curve(args.g))
    if args.json:
        out.write(render.dumps(render.morse_json(rep)))
        return 0
    print("weights: (" + ", ".join(format_rational(w) for w in rep.weights) + ")", file=out)
    print("k\trk U+\tdeg U+\trk U-\tdeg U-", file=out)
    for lv in rep.levels:
        print(f"{lv.k}\t{lv.rank_plus}\t{lv.deg_plus}\t{lv.rank_minus}\t{lv.deg_minus}", file=out)
    for k in rep.chis:
        print(f"chi_{k} = {rep.chis[k]}, hessian dim {rep.hessian[k]}", file=out)
    print(f"morse index: {rep.index}", file=out)
    print(f"minimum test: {rep.verdict.value}", file=out)
    if rep.unrealizable:
        print("warning: positive chi at k = " + ", ".join(map(str, rep.unrealizable))
              + "; not realizable as a polystable fixed point", file=out)
    return 0


def cmd_verify(args, out) -> int:
    grid = oracle.GridSpec(args.p_max, args.q_max, args.g_max, t_window=args.t_window,
                           seed=args.seed, morse_samples=args.samples)
    names = oracle.SUITES if args.suite == "all" else (args.suite,)
    reports = oracle.run_suites(names, grid)
    summary = oracle.combined_json(reports, grid)
    if args.json:
        out.write(render.dumps(summary))
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.suite}: {r.cases} cases, {r.checks} checks, {len(r.failures)} failures "
                  f"({r.elapsed:.2f}s)", file=out)
            for f in r.failures:
                print(f"    {f['check']}: {f['input']}", file=out)
    return 0 if summary["passed"] else 1


COMMANDS = {
    "classify": cmd_classify,
    "atlas": cmd_atlas,
    "triples-alpha": cmd_triples_alpha,
    "triples-critical": cmd_triples_critical,
    "morse": cmd_morse,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except atlas.InconsistencyError as exc:
        log.error("internal inconsistency: %s", exc)
        return 1


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
