"""
Family criteria: divergence along a subsequence for every set of a family,
and the ratio suprema over families and over the two-sided orbit of one set.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..exceptions import PreconditionError, ValidationError
from ..measure import MeasurableSet, SimpleFunction
from ..norms import NormContext, luxemburg_norm, normalized_indicator
from ..simulators import apply_power
from ..transformations import FORWARD, PREIMAGE, Transformation, iter_images
from .base import (
    Criterion,
    CriterionStatus,
    CriterionVerdict,
    SetFamily,
    Witness,
    require_positive_measure,
    scan_divergence,
    target_value,
)
from .divergence import HORIZON, THRESHOLD, check_preimage_divergence

logger = logging.getLogger(__name__)

PAIR_CAP = 10 ** 6
RATIO_WINDOW = 25


def _ratio(numerator: float, denominator: float) -> float:
    if math.isinf(denominator):
        return 0.0
    return numerator / denominator


@dataclass(frozen=True)
class FamilyReport:
    """Per-set subsequence verdicts and the family ratio verdict."""

    per_set: Tuple[CriterionVerdict, ...]
    ratio: CriterionVerdict

    @property
    def all_witnessed(self) -> bool:
        return all(v.is_witnessed for v in self.per_set)

    def verdicts(self) -> List[CriterionVerdict]:
        return [*self.per_set, self.ratio]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'per_set': [v.to_dict() for v in self.per_set],
            'all_witnessed': self.all_witnessed,
            'ratio': self.ratio.to_dict(),
        }


def check_family_divergence(
    ctx: NormContext,
    t: Transformation,
    family: SetFamily,
    horizon: int = HORIZON,
    threshold: float = THRESHOLD,
    pair_cap: int = PAIR_CAP,
) -> FamilyReport:
    """
    Subsequence divergence of every A_i along γ_k ≤ N, and the supremum of

        φ^{-1}(1/H(μ(A_i))) / φ^{-1}(1/H(μ(τ^{-n}A_i)))

    over i and n ≤ N, scanned with n outer and i inner.
    """
    gamma = family.indices(horizon)
    if not gamma:
        raise PreconditionError(f"no subsequence index lies within the horizon {horizon}")
    wanted = set(gamma)

    per_set = []
    for i, subset in enumerate(family.sets):
        images = (
            (n, image)
            for n, image in enumerate(iter_images(t, subset, PREIMAGE, gamma[-1]))
            if n in wanted
        )
        per_set.append(scan_divergence(ctx, images, 'T21a', horizon, threshold, {'set_index': i}))

    ratio = _family_ratio(ctx, t, family, horizon, threshold, pair_cap)
    return FamilyReport(tuple(per_set), ratio)


def _family_ratio(
    ctx: NormContext,
    t: Transformation,
    family: SetFamily,
    horizon: int,
    threshold: float,
    pair_cap: int,
) -> CriterionVerdict:
    heads = [target_value(ctx, s.measure) for s in family.sets]
    orbits = [iter_images(t, s, PREIMAGE, horizon) for s in family.sets]
    best, pairs = 0.0, 0

    for n in range(horizon + 1):
        for i, orbit in enumerate(orbits):
            image = next(orbit)
            if pairs >= pair_cap:
                return CriterionVerdict(
                    'T21b', CriterionStatus.BOUNDED, None, horizon, threshold,
                    {'pairs': pairs, 'truncated': True, 'max_ratio': best},
                )
            pairs += 1
            r = _ratio(heads[i], target_value(ctx, image.measure))
            best = max(best, r)
            if r >= threshold:
                # the normalized indicator's orbit norm equals the ratio
                g = normalized_indicator(ctx, family.sets[i])
                orbit_norm = luxemburg_norm(ctx, apply_power(t, g, n))
                details = {'set_index': i, 'pairs': pairs, 'orbit_norm': orbit_norm}
                return CriterionVerdict('T21b', CriterionStatus.WITNESSED, Witness(n, r), horizon, threshold, details)

    return CriterionVerdict(
        'T21b', CriterionStatus.BOUNDED, None, horizon, threshold,
        {'pairs': pairs, 'truncated': False, 'max_ratio': best},
    )


def orbit_index_set(t: Transformation, subset: MeasurableSet, window: int) -> Dict[int, float]:
    """
    {q ∈ [-Q, Q] : 0 < μ(τ^q A) < inf} mapped to μ(τ^q A); negative q are
    preimages.
    """
    require_positive_measure(subset)
    measures: Dict[int, float] = {}
    for q, image in enumerate(iter_images(t, subset, PREIMAGE, window)):
        if not image.is_empty:
            measures[-q] = image.measure
    for q, image in enumerate(iter_images(t, subset, FORWARD, window)):
        if not image.is_empty:
            measures[q] = image.measure
    return dict(sorted(measures.items()))


def check_orbit_ratio(
    ctx: NormContext,
    t: Transformation,
    subset: MeasurableSet,
    window: int = RATIO_WINDOW,
    threshold: float = THRESHOLD,
    pair_cap: int = PAIR_CAP,
) -> CriterionVerdict:
    """
    Supremum over p < q in I ∩ [-Q, Q] of s(μ(τ^q A)) / s(μ(τ^p A)).

    Pairs are scanned by gap d = q − p ascending, then p ascending; the
    witness index is d.

    Raises:
        PreconditionError: If τ is not injective
    """
    if not t.is_injective:
        raise PreconditionError(f"orbit ratio criterion needs an injective transformation, got {t!r}")
    index_set = orbit_index_set(t, subset, window)
    values = {q: target_value(ctx, m) for q, m in index_set.items()}
    best, pairs = 0.0, 0

    for d in range(1, 2 * window + 1):
        for p in range(-window, window - d + 1):
            q = p + d
            if p not in values or q not in values:
                continue
            if pairs >= pair_cap:
                return CriterionVerdict(
                    'T22ii', CriterionStatus.BOUNDED, None, window, threshold,
                    {'pairs': pairs, 'truncated': True, 'max_ratio': best},
                )
            pairs += 1
            r = _ratio(values[q], values[p])
            best = max(best, r)
            if r >= threshold:
                details = {'p': p, 'q': q, 'pairs': pairs, 'index_set_size': len(values)}
                return CriterionVerdict('T22ii', CriterionStatus.WITNESSED, Witness(d, r), window, threshold, details)

    return CriterionVerdict(
        'T22ii', CriterionStatus.BOUNDED, None, window, threshold,
        {'pairs': pairs, 'truncated': False, 'max_ratio': best, 'index_set_size': len(values)},
    )


def check_orbit_pair_criteria(
    ctx: NormContext,
    t: Transformation,
    subset: MeasurableSet,
    horizon: int = HORIZON,
    window: int = RATIO_WINDOW,
    threshold: float = THRESHOLD,
    pair_cap: int = PAIR_CAP,
) -> List[CriterionVerdict]:
    """Preimage divergence (T22i) and the orbit ratio supremum (T22ii) for one set."""
    return [
        check_preimage_divergence(ctx, t, subset, horizon, threshold, criterion_id='T22i'),
        check_orbit_ratio(ctx, t, subset, window, threshold, pair_cap),
    ]


def _level_index(value: float, base: float) -> int:
    i = math.floor(math.log(value, base)) + 1
    while base ** (i - 1) > value:
        i -= 1
    while base ** i <= value:
        i += 1
    return i


def level_set_family(
    g: SimpleFunction,
    base: float = 3.0,
    subsequence: Optional[Sequence[int]] = None,
) -> SetFamily:
    """
    A_i = {x : base^{i-1} ≤ |g(x)| < base^i} for the i with μ(A_i) > 0,
    ordered by i.

    Raises:
        PreconditionError: If g = 0
    """
    if g.is_zero:
        raise PreconditionError("level sets of the zero function")
    if not base > 1:
        raise ValidationError(f"level set base must be > 1, got {base}")

    levels: Dict[int, List] = {}
    for atom, value in g.values.items():
        levels.setdefault(_level_index(abs(value), base), []).append(atom)
    sets = tuple(MeasurableSet.of(g.space, levels[i]) for i in sorted(levels))
    return SetFamily(sets, None if subsequence is None else tuple(subsequence))


class FamilyDivergence(Criterion):
    check_id = 'T21'
    description = 'subsequence divergence for a family of sets and the family ratio supremum'

    def evaluate(self, ctx, t, subset=None, family: Optional[SetFamily] = None, **kwargs) -> List[CriterionVerdict]:
        if family is None:
            if subset is None:
                raise PreconditionError("T21 needs a set family")
            family = SetFamily((subset,))
        report = check_family_divergence(
            ctx, t, family,
            horizon=kwargs.get('horizon', self.config.get('horizon', HORIZON)),
            threshold=kwargs.get('threshold', self.config.get('threshold', THRESHOLD)),
            pair_cap=self.config.get('pair_cap', PAIR_CAP),
        )
        return report.verdicts()


class OrbitRatio(Criterion):
    check_id = 'T22'
    description = 'preimage divergence and the two-sided orbit ratio supremum for one set'

    def evaluate(self, ctx, t, subset=None, **kwargs) -> List[CriterionVerdict]:
        return check_orbit_pair_criteria(
            ctx, t, subset,
            horizon=kwargs.get('horizon', self.config.get('horizon', HORIZON)),
            window=kwargs.get('window', self.config.get('ratio_window', RATIO_WINDOW)),
            threshold=kwargs.get('threshold', self.config.get('threshold', THRESHOLD)),
            pair_cap=self.config.get('pair_cap', PAIR_CAP),
        )


__all__ = [
    'FamilyReport',
    'check_family_divergence',
    'orbit_index_set',
    'check_orbit_ratio',
    'check_orbit_pair_criteria',
    'level_set_family',
    'FamilyDivergence',
    'OrbitRatio',
]
