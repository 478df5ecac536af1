"""
Single-set divergence criteria along preimages and forward images.
"""

import logging
from typing import Any, Dict, List, Optional

from ..measure import MeasurableSet
from ..norms import NormContext
from ..transformations import FORWARD, PREIMAGE, Transformation, iter_images
from .base import (
    Criterion,
    CriterionStatus,
    CriterionVerdict,
    Witness,
    require_positive_measure,
    scan_divergence,
    target_value,
)

logger = logging.getLogger(__name__)

HORIZON = 10000
THRESHOLD = 1e6
DELTA = 1e-9


def _scan(
    ctx: NormContext,
    t: Transformation,
    subset: MeasurableSet,
    direction: str,
    horizon: int,
    threshold: float,
    criterion_id: str,
) -> CriterionVerdict:
    require_positive_measure(subset)
    images = enumerate(iter_images(t, subset, direction, horizon))
    verdict = scan_divergence(ctx, images, criterion_id, horizon, threshold, {'direction': direction})
    logger.debug("%s on %s: %s", criterion_id, subset.sorted_atoms(), verdict.status.value)
    return verdict


def check_preimage_divergence(
    ctx: NormContext,
    t: Transformation,
    subset: MeasurableSet,
    horizon: int = HORIZON,
    threshold: float = THRESHOLD,
    criterion_id: str = 'T23c',
) -> CriterionVerdict:
    """lim sup_n φ^{-1}(1/H(μ(τ^{-n}A))) = inf, witnessed at the horizon."""
    return _scan(ctx, t, subset, PREIMAGE, horizon, threshold, criterion_id)


def check_forward_divergence(
    ctx: NormContext,
    t: Transformation,
    subset: MeasurableSet,
    horizon: int = HORIZON,
    threshold: float = THRESHOLD,
) -> CriterionVerdict:
    """
    Forward-image version of the preimage criterion.

    Raises:
        PreconditionError: If τ is not injective
    """
    return _scan(ctx, t, subset, FORWARD, horizon, threshold, 'T23d')


def check_two_sided_divergence(
    ctx: NormContext,
    t: Transformation,
    subset: MeasurableSet,
    horizon: int = HORIZON,
    threshold: float = THRESHOLD,
) -> CriterionVerdict:
    """
    Both directions diverge. A degenerate half makes the whole verdict
    degenerate; the witness is the later of the two.
    """
    back = check_preimage_divergence(ctx, t, subset, horizon, threshold)
    ahead = check_forward_divergence(ctx, t, subset, horizon, threshold)
    details = {'preimage': back.status.value, 'forward': ahead.status.value}

    for half in (back, ahead):
        if half.status is CriterionStatus.DEGENERATE:
            return CriterionVerdict('T23e', CriterionStatus.DEGENERATE, half.witness, horizon, threshold, details)
    if back.is_witnessed and ahead.is_witnessed:
        witness = max(back.witness, ahead.witness, key=lambda w: w.n)
        return CriterionVerdict('T23e', CriterionStatus.WITNESSED, witness, horizon, threshold, details)
    return CriterionVerdict('T23e', CriterionStatus.BOUNDED, None, horizon, threshold, details)


def check_separated_divergence(
    ctx: NormContext,
    t: Transformation,
    subset: MeasurableSet,
    horizon: int = HORIZON,
    threshold: float = THRESHOLD,
    delta: float = DELTA,
) -> CriterionVerdict:
    """
    lim inf of the preimage sequence stays ≥ δ while its lim sup diverges.

    The lim inf surrogate is min_{n ≤ N} s_n over the whole horizon.
    """
    require_positive_measure(subset)
    witness: Optional[Witness] = None
    first_null = None
    min_value, min_index = float('inf'), 0

    for n, image in enumerate(iter_images(t, subset, PREIMAGE, horizon)):
        if image.is_empty:
            first_null = n
            break
        s = target_value(ctx, image.measure)
        if s < min_value:
            min_value, min_index = s, n
        if witness is None and s >= threshold:
            witness = Witness(n, s)

    if first_null is not None:
        null_value = target_value(ctx, 0.0)
        if null_value < min_value:
            min_value, min_index = null_value, first_null

    details: Dict[str, Any] = {'min_value': min_value, 'min_index': min_index, 'delta': delta}
    if witness is not None:
        status = CriterionStatus.POSITIVE_LIMINF if min_value >= delta else CriterionStatus.LIMINF_NOT_SEPARATED
        return CriterionVerdict('T23f', status, witness, horizon, threshold, details)
    if first_null is not None:
        details['first_null_index'] = first_null
        null_value = target_value(ctx, 0.0)
        if null_value >= threshold:
            return CriterionVerdict(
                'T23f', CriterionStatus.DEGENERATE, Witness(first_null, null_value), horizon, threshold, details
            )
    return CriterionVerdict('T23f', CriterionStatus.BOUNDED, None, horizon, threshold, details)


class _SetCriterion(Criterion):

    def _settings(self, kwargs: Dict[str, Any]):
        horizon = kwargs.get('horizon', self.config.get('horizon', HORIZON))
        threshold = kwargs.get('threshold', self.config.get('threshold', THRESHOLD))
        return horizon, threshold


class PreimageDivergence(_SetCriterion):
    check_id = 'T23c'
    description = 'preimage target sequence diverges'

    def evaluate(self, ctx, t, subset=None, **kwargs) -> List[CriterionVerdict]:
        return [check_preimage_divergence(ctx, t, subset, *self._settings(kwargs))]


class ForwardDivergence(_SetCriterion):
    check_id = 'T23d'
    description = 'forward-image target sequence diverges'

    def evaluate(self, ctx, t, subset=None, **kwargs) -> List[CriterionVerdict]:
        return [check_forward_divergence(ctx, t, subset, *self._settings(kwargs))]


class TwoSidedDivergence(_SetCriterion):
    check_id = 'T23e'
    description = 'preimage and forward target sequences both diverge'

    def evaluate(self, ctx, t, subset=None, **kwargs) -> List[CriterionVerdict]:
        return [check_two_sided_divergence(ctx, t, subset, *self._settings(kwargs))]


class SeparatedDivergence(_SetCriterion):
    check_id = 'T23f'
    description = 'preimage target sequence diverges with lim inf bounded away from 0'

    def evaluate(self, ctx, t, subset=None, **kwargs) -> List[CriterionVerdict]:
        delta = kwargs.get('delta', self.config.get('delta', DELTA))
        return [check_separated_divergence(ctx, t, subset, *self._settings(kwargs), delta=delta)]


__all__ = [
    'check_preimage_divergence',
    'check_forward_divergence',
    'check_two_sided_divergence',
    'check_separated_divergence',
    'PreimageDivergence',
    'ForwardDivergence',
    'TwoSidedDivergence',
    'SeparatedDivergence',
]
