"""Primal-dual 2-approximation for covering semi-uncrossable set families by edges."""

from .certify import Certificate, build_laminar_witness, certify
from .exact import ExactResult, is_minimal_cover, optimal_cover
from .families import (
    GP2P,
    KCF,
    SNA,
    TKCF,
    Explicit,
    FamilyOracle,
    FamilySpec,
    InvalidSpec,
    STPath,
    SteinerForest,
    TJoin,
    Union,
    contains,
    enumerate_members,
    is_covered,
    residual_cores,
)
from .family_props import ClassReport, ExplicitFamily, classify, implication_audit, search_combination
from .graph import Edge, Multigraph, NodeSet, components, cut_degree, max_flow_value, min_source_side_cut
from .instance import Instance, load_instance
from .primal_dual import Infeasible, SolveResult, solve

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ClassReport",
    "Edge",
    "ExactResult",
    "Explicit",
    "ExplicitFamily",
    "FamilyOracle",
    "FamilySpec",
    "GP2P",
    "Infeasible",
    "Instance",
    "InvalidSpec",
    "KCF",
    "Multigraph",
    "NodeSet",
    "SNA",
    "STPath",
    "SolveResult",
    "SteinerForest",
    "TJoin",
    "TKCF",
    "Union",
    "build_laminar_witness",
    "certify",
    "classify",
    "components",
    "contains",
    "cut_degree",
    "enumerate_members",
    "implication_audit",
    "is_covered",
    "is_minimal_cover",
    "load_instance",
    "max_flow_value",
    "min_source_side_cut",
    "optimal_cover",
    "residual_cores",
    "search_combination",
    "solve",
]
