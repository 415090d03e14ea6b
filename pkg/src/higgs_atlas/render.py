"""JSON and TSV renderings.  Rationals are strings ``num/den``, infinity is ``"inf"``."""
from __future__ import annotations

import json

from .atlas import ComponentRecord, SplitFactorization, TwistedPairs
from .invariants import format_rational
from .morse import MorseReport
from .triples import AlphaInterval, HiggsTripleCorrespondence

TSV_COLUMNS = ("a", "b", "d", "t", "tau", "coprime", "nonempty", "stable_nonempty",
               "smooth", "dimension", "connectedness", "rigidity_flag")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def interval_json(iv: AlphaInterval | None):
    if iv is None:
        return None
    return {"lo": format_rational(iv.lo),
            "hi": "inf" if iv.hi is None else format_rational(iv.hi),
            "empty": iv.empty}


def correspondence_json(c: HiggsTripleCorrespondence | None):
    if c is None:
        return None
    return {"orientation": c.orientation.value,
            "types": [list(t.as_tuple()) for t in c.triples]}


def rigidity_json(r):
    if r is None:
        return None
    if isinstance(r, SplitFactorization):
        return {"kind": "split",
                "higgs_factor": {"rank": r.higgs_rank,
                                 "deg_v": r.higgs_degrees[0],
                                 "deg_w": r.higgs_degrees[1],
                                 "dim": r.higgs_dim},
                "bundle_factor": {"rank": r.bundle_rank, "degree": r.bundle_degree,
                                  "sector": r.bundle_sector, "dim": r.bundle_dim},
                "k2_twisted_degree": r.twisted_degree}
    if isinstance(r, TwistedPairs):
        return {"kind": "k2_twisted", "rank": r.rank, "deg_v": r.degree_v,
                "deg_w": r.degree_w, "fiber_rank": r.fiber_rank}
    raise TypeError(type(r))


def _opt(x, fn=lambda v: v):
    return None if x is None else fn(x)


def record_json(rec: ComponentRecord) -> dict:
    c = rec.cls
    return {
        "class": {"rep": [c.rep.a, c.rep.b], "tau": format_rational(c.tau),
                  "d": c.d, "coprime": c.coprime, "t": c.t},
        "nonempty": rec.nonempty,
        "stable_locus_nonempty": rec.stable_locus_nonempty,
        "smooth": rec.smooth,
        "dimension": rec.dimension,
        "connectedness": _opt(rec.connectedness, lambda v: v.value),
        "rigidity": rigidity_json(rec.rigidity),
        "triple": correspondence_json(rec.triple),
        "alpha": interval_json(rec.alpha),
        "min_energy": _opt(rec.min_energy, format_rational),
    }


def _flag(x) -> str:
    if x is None:
        return ""
    return "true" if x else "false"


def rigidity_flag(rec: ComponentRecord) -> str:
    if isinstance(rec.rigidity, SplitFactorization):
        return "split"
    if isinstance(rec.rigidity, TwistedPairs):
        return "k2_twisted"
    return "none"


def tsv_row(rec: ComponentRecord) -> list:
    c = rec.cls
    return [str(c.rep.a), str(c.rep.b), str(c.d), str(c.t), format_rational(c.tau),
            _flag(c.coprime), _flag(rec.nonempty), _flag(rec.stable_locus_nonempty),
            _flag(rec.smooth), "" if rec.dimension is None else str(rec.dimension),
            _opt(rec.connectedness, lambda v: v.value) or "", rigidity_flag(rec)]


def atlas_tsv(records) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    lines += ["\t".join(tsv_row(r)) for r in records]
    return "\n".join(lines) + "\n"


def morse_json(rep: MorseReport) -> dict:
    return {
        "system": rep.system.render(),
        "weights": [format_rational(w) for w in rep.weights],
        "levels": [{"k": lv.k, "rank_plus": lv.rank_plus, "deg_plus": lv.deg_plus,
                    "rank_minus": lv.rank_minus, "deg_minus": lv.deg_minus}
                   for lv in rep.levels],
        "chi": {str(k): v for k, v in rep.chis.items()},
        "hessian_dim": {str(k): v for k, v in rep.hessian.items()},
        "morse_index": rep.index,
        "minimum_test": rep.verdict.value,
        "unrealizable_levels": rep.unrealizable,
    }
