"""Finite models of divisible and Frobenius P-categories."""

from .axioms import alperin_condition, is_extensile, is_frobenius, is_fully_k_normalized, normalizer_category, sylow_condition
from .catalog import catalog_run
from .config import DEFAULT, Config
from .groups import FiniteGroup, Subgroup, all_subgroups, from_cayley_table, from_permutations
from .linfusion import alperin_decompose, essential_subgroups, factorization_components, is_essential
from .morphism import Morphism
from .pcategory import PCategory, divisible_closure, inner_category, is_divisible
from .verify import fusion_from_ambient, sylow_alperin_check, verify_equivalence

__all__ = [
    "Config", "DEFAULT", "FiniteGroup", "Morphism", "PCategory", "Subgroup",
    "all_subgroups", "alperin_condition", "alperin_decompose", "catalog_run", "divisible_closure",
    "essential_subgroups", "factorization_components", "from_cayley_table", "from_permutations",
    "fusion_from_ambient", "inner_category", "is_divisible", "is_essential", "is_extensile",
    "is_frobenius", "is_fully_k_normalized", "normalizer_category", "sylow_condition",
    "sylow_alperin_check", "verify_equivalence",
]
