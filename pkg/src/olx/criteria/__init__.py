"""
Finite-horizon criteria for Li–Yorke chaos of composition operators.
"""

from ..exceptions import ValidationError
from .base import (
    CRITERION_IDS,
    Criterion,
    CriterionStatus,
    CriterionVerdict,
    SetFamily,
    Witness,
    scan_divergence,
    target_value,
)
from .consistency import ConsistencyMatrix, ConsistencyRow, consistency_matrix
from .divergence import (
    ForwardDivergence,
    PreimageDivergence,
    SeparatedDivergence,
    TwoSidedDivergence,
    check_forward_divergence,
    check_preimage_divergence,
    check_separated_divergence,
    check_two_sided_divergence,
)
from .families import (
    FamilyDivergence,
    FamilyReport,
    OrbitRatio,
    check_family_divergence,
    check_orbit_pair_criteria,
    check_orbit_ratio,
    level_set_family,
    orbit_index_set,
)
from .lemma import LemmaReport, LemmaTransport, check_lemma_transport, transport_constants


# Global criterion registry, keyed by the --check name
CRITERION_REGISTRY = {
    'L1': LemmaTransport,
    'T21': FamilyDivergence,
    'T22': OrbitRatio,
    'T23c': PreimageDivergence,
    'T23d': ForwardDivergence,
    'T23e': TwoSidedDivergence,
    'T23f': SeparatedDivergence,
}


def get_criterion(check_id: str) -> type:
    """
    Get criterion class by check name.

    Raises:
        ValidationError: If the check is unknown
    """
    if check_id not in CRITERION_REGISTRY:
        raise ValidationError(
            f"Unknown check: {check_id}. "
            f"Available checks: {list(CRITERION_REGISTRY.keys())}"
        )
    return CRITERION_REGISTRY[check_id]


__all__ = [
    'CRITERION_IDS',
    'CRITERION_REGISTRY',
    'get_criterion',
    'Criterion',
    'CriterionStatus',
    'CriterionVerdict',
    'SetFamily',
    'Witness',
    'scan_divergence',
    'target_value',
    'check_preimage_divergence',
    'check_forward_divergence',
    'check_two_sided_divergence',
    'check_separated_divergence',
    'check_family_divergence',
    'check_orbit_ratio',
    'check_orbit_pair_criteria',
    'orbit_index_set',
    'level_set_family',
    'check_lemma_transport',
    'transport_constants',
    'consistency_matrix',
    'FamilyReport',
    'LemmaReport',
    'ConsistencyMatrix',
    'ConsistencyRow',
    'PreimageDivergence',
    'ForwardDivergence',
    'TwoSidedDivergence',
    'SeparatedDivergence',
    'FamilyDivergence',
    'OrbitRatio',
    'LemmaTransport',
]
