"""
Cross-validation of the set criteria against orbit dynamics.

Each set criterion claims divergence or not; the orbit-based search for a
semi-irregular vector is the reference. Rows whose claim differs from the
search are flagged instead of being reconciled, since finite horizons cannot
certify a lim sup and the equivalences depend on side conditions (finite
total measure, injectivity, Δ2) reported alongside.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from ..exceptions import PreconditionError
from ..measure import MeasurableSet, SimpleFunction
from ..norms import NormContext
from ..simulators import SearchHit, search_semi_irregular
from ..transformations import Transformation
from .base import CriterionStatus, CriterionVerdict
from .divergence import (
    check_forward_divergence,
    check_preimage_divergence,
    check_separated_divergence,
    check_two_sided_divergence,
)

logger = logging.getLogger(__name__)

NOT_APPLICABLE = 'NotApplicable'


@dataclass(frozen=True)
class ConsistencyRow:
    condition: str
    check: str
    status: str
    claims: Optional[bool]
    witness_n: Optional[int] = None
    witness_value: Optional[float] = None
    agrees: Optional[bool] = None
    note: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {
            'condition': self.condition,
            'check': self.check,
            'status': self.status,
            'claims': self.claims,
            'witness': None if self.witness_n is None else {'n': self.witness_n, 'value': self.witness_value},
            'agrees': self.agrees,
            'note': self.note,
        }


@dataclass(frozen=True)
class ConsistencyMatrix:
    rows: List[ConsistencyRow]
    flags: Dict[str, bool] = field(default_factory=dict)

    @property
    def disagreements(self) -> List[ConsistencyRow]:
        return [r for r in self.rows if r.agrees is False]

    @property
    def consistent(self) -> bool:
        return not self.disagreements

    def row(self, condition: str) -> ConsistencyRow:
        for r in self.rows:
            if r.condition == condition:
                return r
        raise KeyError(condition)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([
            {
                'condition': r.condition,
                'check': r.check,
                'status': r.status,
                'claims': r.claims,
                'witness_n': r.witness_n,
                'witness_value': r.witness_value,
                'agrees': r.agrees,
            }
            for r in self.rows
        ])

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rows': [r.to_dict() for r in self.rows],
            'flags': dict(self.flags),
            'consistent': self.consistent,
        }


def _verdict_row(condition: str, verdict: CriterionVerdict, reference: bool) -> ConsistencyRow:
    claims = verdict.claims_divergence
    return ConsistencyRow(
        condition=condition,
        check=verdict.criterion_id,
        status=verdict.status.value,
        claims=claims,
        witness_n=None if verdict.witness is None else verdict.witness.n,
        witness_value=None if verdict.witness is None else verdict.witness.value,
        agrees=claims == reference,
    )


def _search_row(condition: str, check: str, hit: Optional[SearchHit], reference: bool) -> ConsistencyRow:
    claims = hit is not None
    return ConsistencyRow(
        condition=condition,
        check=check,
        status=hit.report.classification.value if hit else 'NoWitness',
        claims=claims,
        witness_n=hit.report.rebound_index if hit else None,
        witness_value=hit.report.rebound_value if hit else None,
        agrees=claims == reference,
        note=repr(hit.vector) if hit else '',
    )


def consistency_matrix(
    ctx: NormContext,
    t: Transformation,
    subset: MeasurableSet,
    horizon: int = 10000,
    threshold: float = 1e6,
    orbit_horizon: int = 300,
    delta: float = 1e-9,
    candidate_sets: Sequence[MeasurableSet] = (),
    vectors: Sequence[SimpleFunction] = (),
    search_budget: int = 32,
    block_base: int = 4,
    eps_low: float = 1e-6,
    semi_fraction: float = 0.1,
    m_high_irr: float = 1e6,
) -> ConsistencyMatrix:
    """
    Rows for the preimage (c), forward (d), two-sided (e) and separated (f)
    criteria on ``subset``, the orbit search for any semi-irregular vector
    (b) and the indicator-only search (g).

    ``DegenerateNullPreimage`` counts as a claimed divergence. Forward rows
    are ``NotApplicable`` for non-injective τ.
    """
    search = dict(eps_low=eps_low, semi_fraction=semi_fraction, m_high_irr=m_high_irr)
    sets = [subset, *[s for s in candidate_sets if s != subset]]
    hit_b = search_semi_irregular(
        ctx, t, orbit_horizon, budget=search_budget, base=block_base,
        candidate_sets=sets, vectors=vectors, **search,
    )
    hit_g = search_semi_irregular(
        ctx, t, orbit_horizon, budget=search_budget, base=block_base,
        candidate_sets=sets, indicators_only=True, **search,
    )
    reference = hit_b is not None

    rows = [_verdict_row('c', check_preimage_divergence(ctx, t, subset, horizon, threshold), reference)]
    for condition, check_id, checker in (
        ('d', 'T23d', check_forward_divergence),
        ('e', 'T23e', check_two_sided_divergence),
    ):
        try:
            rows.append(_verdict_row(condition, checker(ctx, t, subset, horizon, threshold), reference))
        except PreconditionError as e:
            rows.append(ConsistencyRow(condition, check_id, NOT_APPLICABLE, None, note=str(e)))
    rows.append(_verdict_row('f', check_separated_divergence(ctx, t, subset, horizon, threshold, delta), reference))
    rows.append(_search_row('b', 'orbit_search', hit_b, reference))
    rows.append(_search_row('g', 'indicator_search', hit_g, reference))

    flags = {
        'finite_total_measure': ctx.space.has_finite_measure,
        'injective': t.is_injective,
        'delta2': ctx.phi.delta2_constant is not None,
        'any_degenerate': any(r.status == CriterionStatus.DEGENERATE.value for r in rows),
    }
    matrix = ConsistencyMatrix(rows, flags)
    if not matrix.consistent:
        logger.info(
            "Consistency matrix disagreement in rows %s",
            [r.condition for r in matrix.disagreements],
        )
    return matrix


__all__ = [
    'NOT_APPLICABLE',
    'ConsistencyRow',
    'ConsistencyMatrix',
    'consistency_matrix',
]
