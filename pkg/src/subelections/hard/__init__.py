"""Solvers for the NP-hard variants: XP enumeration, clique reduction,
approximation, and the exhaustive oracle."""

from .brute import BRUTE_FORCE_LIMITS, brute_force_max_common
from .graph import Graph, brute_force_clique_number, clique_number, max_clique
from .xp import (
    approx_common_cand_both,
    build_conflict_graph,
    cand_subelection_isomorphism,
    common_cand_both_xp,
    max_common_cand_subelection_both,
    subelection_isomorphism,
)

__all__ = [
    "BRUTE_FORCE_LIMITS",
    "Graph",
    "approx_common_cand_both",
    "brute_force_clique_number",
    "brute_force_max_common",
    "build_conflict_graph",
    "cand_subelection_isomorphism",
    "clique_number",
    "common_cand_both_xp",
    "max_clique",
    "max_common_cand_subelection_both",
    "subelection_isomorphism",
]
