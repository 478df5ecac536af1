"""
Greedy search for semi-irregular vectors among block vectors and indicators.
"""

import logging
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from ..exceptions import ValidationError
from ..measure import Atom, AtomicMeasureSpace, MeasurableSet, SimpleFunction
from ..norms import NormContext
from ..transformations import Transformation
from .orbits import EPS_LOW, M_HIGH_IRR, SEMI_FRACTION, OrbitReport, orbit_norms

logger = logging.getLogger(__name__)


class SearchHit(NamedTuple):
    vector: SimpleFunction
    report: OrbitReport


def construct_block_vector(space: AtomicMeasureSpace, peaks: Sequence[Tuple[Atom, float]]) -> SimpleFunction:
    """
    Σ_j c_j·χ_{{k_j}} from (position k_j, coefficient c_j) pairs.

    Raises:
        ValidationError: On duplicate positions or positions outside the domain
    """
    values = {}
    for position, coefficient in peaks:
        if position in values:
            raise ValidationError(f"duplicate block position {position!r}")
        if not space.contains(position):
            raise ValidationError(f"block position {position!r} is outside the {space.domain} domain")
        values[position] = float(coefficient)
    return SimpleFunction(values, space)


def block_candidates(space: AtomicMeasureSpace, horizon: int, base: int = 4) -> Iterator[SimpleFunction]:
    """
    Block vectors with peaks at base^1..base^J (base^J ≤ horizon), first with
    unit coefficients and then with coefficients 2^j.
    """
    J = 1
    while base ** J <= horizon:
        positions = [base ** j for j in range(1, J + 1)]
        for coefficients in ([1.0] * J, [2.0 ** j for j in range(1, J + 1)]):
            if not all(space.contains(p) for p in positions):
                logger.warning("Skipping block candidate: positions %s outside the %s domain", positions, space.domain)
                return
            yield construct_block_vector(space, list(zip(positions, coefficients)))
        J += 1


def search_semi_irregular(
    ctx: NormContext,
    t: Transformation,
    horizon: int,
    budget: int = 32,
    base: int = 4,
    candidate_sets: Iterable[MeasurableSet] = (),
    vectors: Iterable[SimpleFunction] = (),
    indicators_only: bool = False,
    eps_low: float = EPS_LOW,
    semi_fraction: float = SEMI_FRACTION,
    m_high_irr: float = M_HIGH_IRR,
) -> Optional[SearchHit]:
    """
    Return the first candidate whose orbit is a semi-irregular (or irregular)
    witness at the horizon, or None.

    Candidates are the explicit ``vectors``, the indicators of
    ``candidate_sets`` and, unless ``indicators_only``, geometrically spaced
    block vectors, in that order; at most ``budget`` orbits are evaluated.
    With ``indicators_only`` the explicit vectors are skipped as well.
    """
    indicators = (SimpleFunction.indicator(s) for s in candidate_sets if not s.is_empty)
    if indicators_only:
        candidates: List[Iterable[SimpleFunction]] = [indicators]
    else:
        explicit = (v for v in vectors if not v.is_zero)
        candidates = [explicit, indicators, block_candidates(ctx.space, horizon, base)]

    tried = 0
    for group in candidates:
        for vector in group:
            if tried >= budget:
                logger.info("Search budget of %d candidates exhausted", budget)
                return None
            tried += 1
            report = orbit_norms(
                ctx, t, vector, horizon,
                eps_low=eps_low, semi_fraction=semi_fraction, m_high_irr=m_high_irr,
            )
            logger.debug("Candidate %d %r: %s", tried, vector, report.classification.value)
            if report.is_witness:
                logger.info("Witness found after %d candidates: %r", tried, vector)
                return SearchHit(vector, report)
    return None


__all__ = [
    'SearchHit',
    'construct_block_vector',
    'block_candidates',
    'search_semi_irregular',
]
