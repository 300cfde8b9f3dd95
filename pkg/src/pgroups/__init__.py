"""Exact computations on finite p-groups, their derivation rings, and the
automorphism groups those rings encode."""

from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_homs,
    hom_count_abelian,
    minimal_generating_set,
    quotient,
    subgroup_closure,
    whole_subgroup,
)
from .presentations import PcPresentation, from_pc_presentation
from .rings import FiniteRing, adjoint_group, is_radical, nilpotency_degree
from .derivations import (
    Derivation,
    DerivationRing,
    aut_from_derivation,
    aut_n,
    derivation_from_aut,
    enumerate_derivations,
    restriction_sequence,
    verify_automorphism_correspondence,
)
from .fullness import check_corollary47, check_prop42, check_theorem43, is_full_wrt
from .berkovich import (
    check_lemma32,
    check_lemma33,
    check_theorem31,
    compute_H_tower,
    verify_theorem51,
)
from .catalog import bundled_catalog, catalog_entry, catalog_group
from .reports import Report, run_checks

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup", "GroupHom", "Subgroup", "PcPresentation", "FiniteRing",
    "Derivation", "DerivationRing", "Report",
    "all_homs", "hom_count_abelian", "minimal_generating_set", "quotient",
    "subgroup_closure", "whole_subgroup", "from_pc_presentation",
    "adjoint_group", "is_radical", "nilpotency_degree",
    "aut_from_derivation", "aut_n", "derivation_from_aut",
    "enumerate_derivations", "restriction_sequence",
    "verify_automorphism_correspondence",
    "check_corollary47", "check_prop42", "check_theorem43", "is_full_wrt",
    "check_lemma32", "check_lemma33", "check_theorem31", "compute_H_tower",
    "verify_theorem51",
    "bundled_catalog", "catalog_entry", "catalog_group", "run_checks",
]
