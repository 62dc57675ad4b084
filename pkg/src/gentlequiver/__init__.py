"""Invariants and derived equivalence for gentle bound quivers."""

from .ag_invariant import PhiInvariant, assign_signs, phi, phi_closed_form, phi_equal, threads
from .classification import (ALL_M, InvariantPair, classify, derived_equivalent, infer_m,
                             invariant_pair, is_A_branched, is_m_branched)
from .bundled import FIXTURE_NAMES, fixture
from .hochschild import CochainComplex, hh_dims
from .io import dump, load, parse, serialize
from .normal_forms import NormalFormSpec, linear_quiver, make_normal_form
from .quiver import (Arrow, BoundQuiver, QuiverError, Relation, cartan_matrix,
                     connected_components, euler_characteristic, is_finite_dimensional,
                     opposite, validate_gentle)

__version__ = "0.1.0"

__all__ = [
    "ALL_M", "Arrow", "BoundQuiver", "CochainComplex", "FIXTURE_NAMES", "InvariantPair",
    "NormalFormSpec", "PhiInvariant", "QuiverError", "Relation", "assign_signs",
    "cartan_matrix", "classify", "connected_components", "derived_equivalent", "dump",
    "euler_characteristic", "fixture", "hh_dims", "infer_m", "invariant_pair",
    "is_A_branched", "is_finite_dimensional", "is_m_branched", "linear_quiver", "load",
    "make_normal_form", "opposite", "parse", "phi", "phi_closed_form", "phi_equal",
    "serialize", "threads", "validate_gentle",
]
