"""
Orbits of the composition operator C_τ g = g∘τ and their norm sequences.

Finite-horizon surrogates stand in for lim inf / lim sup: an orbit is
classified as a witness only when its norm first drops below ``eps_low`` and
later rebounds above a threshold.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from ..exceptions import DomainError, PreconditionError
from ..measure import SimpleFunction
from ..norms import NormContext, luxemburg_norm, sup_norm
from ..transformations import Transformation

logger = logging.getLogger(__name__)

EPS_LOW = 1e-6
SEMI_FRACTION = 0.1
M_HIGH_IRR = 1e6


class OrbitClassification(str, Enum):
    NO_WITNESS = 'NoWitness'
    SEMI_IRREGULAR = 'SemiIrregularWitness'
    IRREGULAR = 'IrregularWitness'


def apply_power(t: Transformation, g: SimpleFunction, n: int) -> SimpleFunction:
    """
    C_τ^n g = g∘τ^n, exact: value v on τ^{-n}({g = v}).

    Raises:
        DomainError: If n is negative
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if n == 0:
        return g
    return SimpleFunction(t.pull_back(g.values, n), g.space)


def classify_sequence(
    values: Sequence[float],
    eps_low: float,
    m_high_semi: float,
    m_high_irr: float,
) -> Tuple[OrbitClassification, Optional[int], Optional[float], Optional[int]]:
    """
    Rebound rule: after the first index with value < eps_low, the largest
    later value is the rebound.

    Returns:
        (classification, first_low_index, rebound_value, rebound_index)
    """
    first_low = next((n for n, v in enumerate(values) if v < eps_low), None)
    if first_low is None or first_low + 1 >= len(values):
        return OrbitClassification.NO_WITNESS, first_low, None, None

    tail = values[first_low + 1:]
    offset = max(range(len(tail)), key=tail.__getitem__)
    rebound, rebound_index = tail[offset], first_low + 1 + offset

    if rebound > m_high_irr and rebound > m_high_semi:
        label = OrbitClassification.IRREGULAR
    elif rebound > m_high_semi:
        label = OrbitClassification.SEMI_IRREGULAR
    else:
        label = OrbitClassification.NO_WITNESS
    return label, first_low, rebound, rebound_index


@dataclass(frozen=True)
class OrbitReport:
    """
    Norm sequence of an orbit n = 0..N with its classification.

    ``classified_on`` names the sequence the thresholds were applied to:
    ``norm`` for the plain φ-norm, ``intersection_norm`` for L^φ ∩ L^∞.
    """

    norms: Tuple[float, ...]
    sup_norms: Tuple[float, ...]
    classification: OrbitClassification
    eps_low: float
    m_high_semi: float
    m_high_irr: float
    first_low_index: Optional[int] = None
    rebound_value: Optional[float] = None
    rebound_index: Optional[int] = None
    intersection_norms: Optional[Tuple[float, ...]] = None
    classified_on: str = 'norm'

    @property
    def horizon(self) -> int:
        return len(self.norms) - 1

    @property
    def sequence(self) -> Tuple[float, ...]:
        if self.classified_on == 'intersection_norm':
            return self.intersection_norms
        return self.norms

    @property
    def min_index(self) -> int:
        seq = self.sequence
        return min(range(len(seq)), key=seq.__getitem__)

    @property
    def min_value(self) -> float:
        return self.sequence[self.min_index]

    @property
    def max_index(self) -> int:
        seq = self.sequence
        return max(range(len(seq)), key=seq.__getitem__)

    @property
    def max_value(self) -> float:
        return self.sequence[self.max_index]

    @property
    def is_witness(self) -> bool:
        return self.classification is not OrbitClassification.NO_WITNESS

    def to_frame(self) -> pd.DataFrame:
        """Trace with columns n, norm, sup_norm and intersection_norm when present."""
        data = {
            'n': range(len(self.norms)),
            'norm': self.norms,
            'sup_norm': self.sup_norms,
        }
        if self.intersection_norms is not None:
            data['intersection_norm'] = self.intersection_norms
        return pd.DataFrame(data)

    def summary(self) -> Dict[str, Any]:
        """Everything but the sequences."""
        return {
            'horizon': self.horizon,
            'classified_on': self.classified_on,
            'classification': self.classification.value,
            'min_value': self.min_value,
            'min_index': self.min_index,
            'max_value': self.max_value,
            'max_index': self.max_index,
            'first_low_index': self.first_low_index,
            'rebound_value': self.rebound_value,
            'rebound_index': self.rebound_index,
            'thresholds': {
                'eps_low': self.eps_low,
                'm_high_semi': self.m_high_semi,
                'm_high_irr': self.m_high_irr,
            },
        }

    def to_dict(self) -> Dict[str, Any]:
        data = self.summary()
        data['norms'] = list(self.norms)
        data['sup_norms'] = list(self.sup_norms)
        if self.intersection_norms is not None:
            data['intersection_norms'] = list(self.intersection_norms)
        return data


def _trajectory(
    ctx: NormContext,
    t: Transformation,
    g: SimpleFunction,
    horizon: int,
    progress: bool,
) -> Tuple[List[float], List[float]]:
    norms, sups = [], []
    current = g
    steps = tqdm(range(horizon + 1), desc='orbit', disable=not progress, leave=False)
    for n in steps:
        if current.is_zero:
            # g∘τ^n = 0 implies g∘τ^m = 0 for m ≥ n
            logger.debug("Orbit support empty from n=%d", n)
            rest = horizon + 1 - n
            norms.extend([0.0] * rest)
            sups.extend([0.0] * rest)
            break
        norms.append(luxemburg_norm(ctx, current))
        sups.append(sup_norm(current))
        current = apply_power(t, current, 1)
    return norms, sups


def orbit_norms(
    ctx: NormContext,
    t: Transformation,
    g: SimpleFunction,
    horizon: int,
    eps_low: float = EPS_LOW,
    semi_fraction: float = SEMI_FRACTION,
    m_high_irr: float = M_HIGH_IRR,
    progress: bool = False,
) -> OrbitReport:
    """
    ||C_τ^n g||_{φ,h} for n = 0..horizon, classified by the rebound rule.

    Args:
        ctx: Norm context
        t: Transformation
        g: Non-zero simple function
        horizon: Last orbit index N
        eps_low: Threshold the orbit has to dip below
        semi_fraction: Semi-irregular rebound threshold as a fraction of ||g||
        m_high_irr: Irregular rebound threshold
        progress: Show a tqdm progress bar

    Raises:
        PreconditionError: If g = 0
    """
    if g.is_zero:
        raise PreconditionError("orbit of the zero vector")
    if horizon < 0:
        raise DomainError(f"horizon must be non-negative, got {horizon}")

    norms, sups = _trajectory(ctx, t, g, horizon, progress)
    m_high_semi = semi_fraction * norms[0]
    label, first_low, rebound, rebound_index = classify_sequence(norms, eps_low, m_high_semi, m_high_irr)
    logger.debug("Orbit of %r: %s", g, label.value)
    return OrbitReport(
        norms=tuple(norms),
        sup_norms=tuple(sups),
        classification=label,
        eps_low=eps_low,
        m_high_semi=m_high_semi,
        m_high_irr=m_high_irr,
        first_low_index=first_low,
        rebound_value=rebound,
        rebound_index=rebound_index,
    )


def intersection_orbit_probe(
    ctx: NormContext,
    t: Transformation,
    g: SimpleFunction,
    horizon: int,
    eps_low: float = EPS_LOW,
    semi_fraction: float = SEMI_FRACTION,
    m_high_irr: float = M_HIGH_IRR,
    progress: bool = False,
) -> OrbitReport:
    """
    Orbit norms in max{||·||_φ, ||·||_∞}, classified on that sequence.

    Report only; nothing about L^φ ∩ L^∞ is asserted from it.

    Raises:
        PreconditionError: If g = 0 or the weight is not constant
    """
    if g.is_zero:
        raise PreconditionError("orbit of the zero vector")
    if not ctx.weight.is_constant:
        raise PreconditionError(f"intersection norm needs a constant weight, got {ctx.weight!r}")
    if not ctx.is_orlicz_space:
        logger.warning("Intersection norm with non-unit constant weight %r", ctx.weight)

    norms, sups = _trajectory(ctx, t, g, horizon, progress)
    both = [max(a, b) for a, b in zip(norms, sups)]
    m_high_semi = semi_fraction * both[0]
    label, first_low, rebound, rebound_index = classify_sequence(both, eps_low, m_high_semi, m_high_irr)
    return OrbitReport(
        norms=tuple(norms),
        sup_norms=tuple(sups),
        classification=label,
        eps_low=eps_low,
        m_high_semi=m_high_semi,
        m_high_irr=m_high_irr,
        first_low_index=first_low,
        rebound_value=rebound,
        rebound_index=rebound_index,
        intersection_norms=tuple(both),
        classified_on='intersection_norm',
    )


@dataclass(frozen=True)
class LiYorkePairReport:
    """Gap sequence ||C_τ^n (g1 − g2)|| for a candidate Li–Yorke pair."""

    g1: SimpleFunction
    g2: SimpleFunction
    gaps: Tuple[float, ...]
    eps_low: float
    m_pair: float
    first_low_index: Optional[int]
    rebound_value: Optional[float]
    rebound_index: Optional[int]
    verdict: bool

    @property
    def inf_gap(self) -> float:
        return min(self.gaps)

    @property
    def sup_gap(self) -> float:
        return max(self.gaps)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'g1': self.g1.to_dict(),
            'g2': self.g2.to_dict(),
            'horizon': len(self.gaps) - 1,
            'inf_gap': self.inf_gap,
            'sup_gap': self.sup_gap,
            'first_low_index': self.first_low_index,
            'rebound_value': self.rebound_value,
            'rebound_index': self.rebound_index,
            'thresholds': {'eps_low': self.eps_low, 'm_pair': self.m_pair},
            'verdict': self.verdict,
        }


def li_yorke_pair_probe(
    ctx: NormContext,
    t: Transformation,
    g1: SimpleFunction,
    g2: SimpleFunction,
    horizon: int,
    eps_low: float = EPS_LOW,
    m_pair: Optional[float] = None,
    semi_fraction: float = SEMI_FRACTION,
) -> LiYorkePairReport:
    """
    Probe (g1, g2) as a Li–Yorke pair; by linearity the gap orbit is the
    orbit of g1 − g2.

    The verdict holds when the gap drops below ``eps_low`` and later
    rebounds above ``m_pair`` (default ``semi_fraction``·gap₀).

    Raises:
        PreconditionError: If g1 = g2
    """
    diff = g1 - g2
    if diff.is_zero:
        raise PreconditionError("Li-Yorke pair needs g1 != g2")

    gaps, _ = _trajectory(ctx, t, diff, horizon, progress=False)
    if m_pair is None:
        m_pair = semi_fraction * gaps[0]
    label, first_low, rebound, rebound_index = classify_sequence(gaps, eps_low, m_pair, float('inf'))
    return LiYorkePairReport(
        g1=g1,
        g2=g2,
        gaps=tuple(gaps),
        eps_low=eps_low,
        m_pair=m_pair,
        first_low_index=first_low,
        rebound_value=rebound,
        rebound_index=rebound_index,
        verdict=label is not OrbitClassification.NO_WITNESS,
    )


__all__ = [
    'OrbitClassification',
    'OrbitReport',
    'LiYorkePairReport',
    'apply_power',
    'classify_sequence',
    'orbit_norms',
    'intersection_orbit_probe',
    'li_yorke_pair_probe',
]
