"""Exact log Swan conductors over 2-dimensional local rings in positive
characteristic, with tangent-curve restriction experiments."""

from .conductor import (Character, ReductionReport, SearchCapExceeded,
                        brute_force_sw, classify, fil_member,
                        fil_nonlog_member, gamma, sw_curve, sw_log)
from .curves import (CurveMorphism, ExperimentRow, FamilyResult, GoodVector,
                     adjust_p_coprime, b_good_vector, check_bounds,
                     family_experiment, pullback_multiplicity,
                     restrict_character, select_support)
from .fields import GF, FieldElem
from .parsing import CharacterSpec, ExpressionParser, ParseError, load_spec
from .rings import (BoundaryLaurent, BoundaryRing, MPoly, SeriesRing, SeriesW,
                    decompose_boundary, is_pth_power, pth_power_part,
                    substitute, substitute_map, valuation)
from .witt import (IntegerRing, UniversalWittPolys, WittVec, apply_F_minus_1,
                   derive_witt_polys, frobenius, ghost, verschiebung,
                   witt_add, witt_mul_p, witt_neg, witt_sub)

__version__ = "0.1.0"

__all__ = [
    "BoundaryLaurent", "BoundaryRing", "Character", "CharacterSpec",
    "CurveMorphism", "ExperimentRow", "ExpressionParser", "FamilyResult",
    "FieldElem", "GF", "GoodVector", "IntegerRing", "MPoly", "ParseError",
    "ReductionReport", "SearchCapExceeded", "SeriesRing", "SeriesW",
    "UniversalWittPolys", "WittVec", "adjust_p_coprime", "apply_F_minus_1",
    "b_good_vector", "brute_force_sw", "check_bounds", "classify",
    "decompose_boundary", "derive_witt_polys", "family_experiment",
    "fil_member", "fil_nonlog_member", "frobenius", "gamma", "ghost",
    "is_pth_power", "load_spec", "pth_power_part", "pullback_multiplicity",
    "restrict_character", "select_support", "substitute", "substitute_map",
    "sw_curve", "sw_log", "valuation", "verschiebung", "witt_add",
    "witt_mul_p", "witt_neg", "witt_sub",
]
