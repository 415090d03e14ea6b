"""Exact invariants and component atlas for moduli of U(p,q)-Higgs bundles."""
from .invariants import (Curve, InvariantPair, Signature, expected_dim_higgs,
                         milnor_wood_ok, min_energy, rigid_dim, slope_bounds_report,
                         toledo, toledo_max, triple_moduli_dim)
from .triples import TripleType, alpha_range, critical_values, higgs_to_triple
from .morse import HodgeSystem, morse_index
from .atlas import RegionSpec, classify, count_components, enumerate_region

__version__ = "0.1.0"

__all__ = [
    "Curve", "InvariantPair", "Signature", "expected_dim_higgs", "milnor_wood_ok",
    "min_energy", "rigid_dim", "slope_bounds_report", "toledo", "toledo_max",
    "triple_moduli_dim", "TripleType", "alpha_range", "critical_values", "higgs_to_triple",
    "HodgeSystem", "morse_index", "RegionSpec", "classify", "count_components",
    "enumerate_region",
]
