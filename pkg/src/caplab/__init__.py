"""Audit harness for an explicit psi: Sub(A) -> Sub(H/K), Kummer orthogonality and capitulation."""

from .galois_model import ArtinIso, FieldNode, field_join, field_meet, fixed_field, fixing_group
from .group_core import GroupElement, PGroupType, Subgroup, enumerate_subgroups, span
from .harness import SuiteConfig, SuiteResult, replay, run_suite
from .pairing import KummerPairing
from .psi_map import ComplementStrategy, PsiMap
from .reports import ClaimReport
from .transfer_capitulation import FiniteGroup, capitulation_kernel, transfer

__all__ = [
    "ArtinIso", "ClaimReport", "ComplementStrategy", "FieldNode", "FiniteGroup", "GroupElement",
    "KummerPairing", "PGroupType", "PsiMap", "Subgroup", "SuiteConfig", "SuiteResult",
    "capitulation_kernel", "enumerate_subgroups", "field_join", "field_meet", "fixed_field",
    "fixing_group", "replay", "run_suite", "span", "transfer",
]
__version__ = "0.1.0"
