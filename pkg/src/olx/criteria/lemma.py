"""
Transport of contraction constants between measures and indicator norms.

For a set A and n, with H(m) = ∫₀^m h:

    (b)  H(μ(τ^{-n}A)) ≤ k·H(μ(A))
    (a)  ||χ_{τ^{-n}A}|| ≤ k'·||χ_A||

Under Δ2 each form implies the other with a transported constant. The
checker draws random (A, n), measures the tight constants k and k', and
verifies both transport bounds.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..exceptions import PreconditionError
from ..measure import MeasurableSet
from ..norms import NormContext
from ..transformations import Transformation, preimage_set
from ..utils import make_rng, random_set
from .base import Criterion, target_value

logger = logging.getLogger(__name__)

TRIALS = 200
TOLERANCE = 1e-12


@dataclass(frozen=True)
class LemmaTrial:
    atoms: Tuple[str, ...]
    n: int
    k: float
    k_prime: float
    forward_bound: float
    converse_bound: float

    @property
    def forward_holds(self) -> bool:
        return self.k_prime <= self.forward_bound * (1 + TOLERANCE)

    @property
    def converse_holds(self) -> bool:
        return self.k <= self.converse_bound * (1 + TOLERANCE)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'atoms': list(self.atoms),
            'n': self.n,
            'k': self.k,
            'k_prime': self.k_prime,
            'forward_bound': self.forward_bound,
            'converse_bound': self.converse_bound,
        }


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of the transport check over all trials."""

    phi_kind: str
    trials: Tuple[LemmaTrial, ...]
    transport_exponent: Optional[float]

    @property
    def forward_holds(self) -> bool:
        """(b) with k implies (a) with the transported k' on every trial."""
        return all(t.forward_holds for t in self.trials)

    @property
    def converse_holds(self) -> bool:
        """(a) with k' implies (b) with the transported k on every trial."""
        return all(t.converse_holds for t in self.trials)

    @property
    def max_exact_error(self) -> Optional[float]:
        """Largest relative gap between k' and k^e when φ is a power."""
        if self.transport_exponent is None:
            return None
        errors = [
            abs(t.k_prime - t.k ** self.transport_exponent) / max(1.0, t.k ** self.transport_exponent)
            for t in self.trials
        ]
        return max(errors, default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'criterion': 'L1',
            'phi': self.phi_kind,
            'trials': len(self.trials),
            'forward_holds': self.forward_holds,
            'converse_holds': self.converse_holds,
            'transport_exponent': self.transport_exponent,
            'max_exact_error': self.max_exact_error,
            'constant_map': [[t.k, t.k_prime] for t in self.trials],
        }


def transport_constants(ctx: NormContext, t: Transformation, subset: MeasurableSet, n: int) -> Tuple[float, float]:
    """
    Tight constants (k, k') for one (A, n).

    k' = ||χ_{τ^{-n}A}|| / ||χ_A|| = s(μ(A)) / s(μ(τ^{-n}A)), 0 for an
    empty preimage.
    """
    image = preimage_set(t, subset, n)
    head = float(ctx.weight.cumulative(subset.measure))
    k = float(ctx.weight.cumulative(image.measure)) / head
    if image.is_empty:
        return k, 0.0
    s_tail = target_value(ctx, image.measure)
    k_prime = 0.0 if math.isinf(s_tail) else target_value(ctx, subset.measure) / s_tail
    return k, k_prime


def check_lemma_transport(
    ctx: NormContext,
    t: Transformation,
    trials: int = TRIALS,
    rng: Optional[np.random.Generator] = None,
    max_power: int = 8,
    max_atoms: int = 4,
) -> LemmaReport:
    """
    Random-trial check of the Δ2 transport between (b) and (a).

    Raises:
        PreconditionError: If φ does not satisfy Δ2 for all s
    """
    phi = ctx.phi
    if phi.delta2_constant is None:
        raise PreconditionError(f"{phi!r} does not satisfy the Δ2 condition")
    rng = rng if rng is not None else make_rng()

    results: List[LemmaTrial] = []
    for _ in range(trials):
        subset = random_set(ctx.space, rng, max_atoms=max_atoms)
        n = int(rng.integers(0, max_power + 1))
        k, k_prime = transport_constants(ctx, t, subset, n)
        results.append(LemmaTrial(
            atoms=tuple(str(a) for a in subset),
            n=n,
            k=k,
            k_prime=k_prime,
            forward_bound=phi.forward_transport_bound(k),
            converse_bound=phi.converse_transport_bound(k_prime),
        ))

    report = LemmaReport(phi.kind, tuple(results), phi.transport_exponent)
    logger.info(
        "Lemma transport over %d trials: forward=%s converse=%s",
        trials, report.forward_holds, report.converse_holds,
    )
    return report


class LemmaTransport(Criterion):
    check_id = 'L1'
    description = 'Δ2 transport between measure and indicator-norm contraction constants'

    def evaluate(self, ctx, t, subset=None, **kwargs) -> List[LemmaReport]:
        trials = kwargs.get('trials', self.config.get('lemma_trials', TRIALS))
        return [check_lemma_transport(ctx, t, trials, rng=kwargs.get('rng'))]


__all__ = [
    'LemmaTrial',
    'LemmaReport',
    'transport_constants',
    'check_lemma_transport',
    'LemmaTransport',
]
