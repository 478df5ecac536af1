"""
Modular, Luxemburg norm and related norms on Orlicz–Lorentz spaces over
atomic measure spaces.

For a simple function g with rearrangement profile (v_j, M_j) the modular is
the exact sum

    I(g/λ) = Σ_j φ(v_j/λ)·(H(M_j) − H(M_{j-1}))

and the Luxemburg norm is the smallest λ with I(g/λ) ≤ 1.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, Tuple

import numpy as np
from scipy.optimize import bisect

from .exceptions import InvariantError, PreconditionError, ValidationError
from .gauges import OrliczFunction, PowerFunction, WeightFunction, reciprocal
from .measure import AtomicMeasureSpace, MeasurableSet, RearrangementProfile, SimpleFunction, rearrangement

logger = logging.getLogger(__name__)

LUXEMBURG_RTOL = 1e-12
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class NormContext:
    """The data fixing an Orlicz–Lorentz norm: φ, h and the space."""

    phi: OrliczFunction
    weight: WeightFunction
    space: AtomicMeasureSpace
    rtol: float = LUXEMBURG_RTOL
    max_iterations: int = MAX_ITERATIONS

    @property
    def is_orlicz_space(self) -> bool:
        """h ≡ 1: the space is the Orlicz space L^φ."""
        return self.weight.is_constant and float(self.weight(1.0)) == 1.0

    @property
    def is_lorentz_space(self) -> bool:
        """φ(s) = s: the space is the Lorentz space."""
        return isinstance(self.phi, PowerFunction) and self.phi.p == 1.0

    def with_weight(self, weight: WeightFunction) -> 'NormContext':
        return replace(self, weight=weight)

    def to_dict(self) -> Dict:
        return {
            'phi': self.phi.to_dict(),
            'weight': self.weight.to_dict(),
            'space': self.space.to_dict(),
        }


def _profile_terms(ctx: NormContext, profile: RearrangementProfile) -> Tuple[np.ndarray, np.ndarray]:
    values, endpoints = profile.as_arrays()
    cumulative = np.asarray(ctx.weight.cumulative(np.concatenate(([0.0], endpoints))))
    return values, np.diff(cumulative)


def _modular_sum(phi: OrliczFunction, values: np.ndarray, increments: np.ndarray, scale: float) -> float:
    gauge = np.asarray(phi(values / scale))
    # a step whose H-increment rounds to zero contributes nothing, even where φ = inf
    terms = np.where(increments > 0, gauge * np.where(increments > 0, increments, 1.0), 0.0)
    return math.fsum(terms.tolist())


def modular(ctx: NormContext, g: SimpleFunction) -> float:
    """
    I_{φ,h}(g) = ∫ φ(g*(t)) h(t) dt, exact over the rearrangement profile.

    Returns +inf when some level of |g| reaches b_φ.
    """
    profile = rearrangement(g)
    if profile.is_empty:
        return 0.0
    values, increments = _profile_terms(ctx, profile)
    return _modular_sum(ctx.phi, values, increments, 1.0)


def _indicator_norm_of_measure(ctx: NormContext, m: float) -> float:
    if m == 0:
        return 0.0
    return reciprocal(ctx.phi.inverse(reciprocal(float(ctx.weight.cumulative(m)))))


def indicator_norm(ctx: NormContext, subset: MeasurableSet) -> float:
    """
    ||χ_A|| = 1/φ^{-1}(1/H(μ(A))), and 0 when μ(A) = 0.

    Note the reciprocal inside φ^{-1}: the norm grows with μ(A).
    """
    return _indicator_norm_of_measure(ctx, subset.measure)


def luxemburg_norm(ctx: NormContext, g: SimpleFunction, method: str = 'auto') -> float:
    """
    Luxemburg norm inf{λ > 0 : I(g/λ) ≤ 1}.

    Args:
        ctx: Norm context
        g: Simple function
        method: ``auto`` uses the closed χ_A formula when |g| takes a single
            value, I(g)^{1/p} for φ = power(p), and bisection otherwise;
            ``bisection`` always bisects

    Returns:
        On the bisection path, the outer endpoint of the final bracket, so
        that I(g/λ) ≤ 1 holds for the returned λ
    """
    return luxemburg_bracket(ctx, g, method)[0]


def luxemburg_bracket(ctx: NormContext, g: SimpleFunction, method: str = 'auto') -> Tuple[float, float]:
    """
    Luxemburg norm together with the width of the final root bracket.

    The width is 0 on the closed-form paths.
    """
    if method not in ('auto', 'bisection'):
        raise ValidationError(f"Unknown method: {method}. Available methods: ['auto', 'bisection']")

    profile = rearrangement(g)
    if profile.is_empty:
        return 0.0, 0.0
    if method == 'auto' and len(profile.values) == 1:
        return profile.values[0] * _indicator_norm_of_measure(ctx, profile.endpoints[0]), 0.0

    values, increments = _profile_terms(ctx, profile)
    if method == 'auto' and isinstance(ctx.phi, PowerFunction):
        # I(g/λ) = λ^{-p}·I(g)
        return _modular_sum(ctx.phi, values, increments, 1.0) ** (1.0 / ctx.phi.p), 0.0

    def excess(lam: float) -> float:
        return _modular_sum(ctx.phi, values, increments, lam) - 1.0

    lo = hi = float(values[0])
    for _ in range(ctx.max_iterations):
        if excess(hi) <= 0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise InvariantError(f"modular never dropped below 1 for {g!r}")
    if lo == hi:
        for _ in range(ctx.max_iterations):
            lo /= 2.0
            if excess(lo) > 0:
                break
            hi = lo
        else:
            raise InvariantError(f"modular never exceeded 1 for {g!r}")
    if excess(hi) == 0:
        return hi, 0.0

    logger.debug("Luxemburg bracket [%g, %g] for %d levels", lo, hi, len(values))
    lam = bisect(
        excess,
        lo,
        hi,
        xtol=np.finfo(float).tiny,
        rtol=ctx.rtol,
        maxiter=ctx.max_iterations,
    )
    # move to the outer side of the root
    while excess(lam) > 0:
        lam = min(hi, lam * (1.0 + ctx.rtol))
    return lam, ctx.rtol * lam


def sup_norm(g: SimpleFunction) -> float:
    """||g||_∞ = max |g|, 0 for the zero function."""
    return max((abs(v) for v in g.values.values()), default=0.0)


def intersection_norm(ctx: NormContext, g: SimpleFunction) -> float:
    """
    max{||g||_φ, ||g||_∞} on L^φ ∩ L^∞.

    Raises:
        PreconditionError: If the weight is not constant
    """
    if not ctx.weight.is_constant:
        raise PreconditionError(
            f"intersection norm needs a constant weight, got {ctx.weight!r}"
        )
    if not ctx.is_orlicz_space:
        logger.warning("Intersection norm with non-unit constant weight %r", ctx.weight)
    return max(luxemburg_norm(ctx, g), sup_norm(g))


def normalized_indicator(ctx: NormContext, subset: MeasurableSet) -> SimpleFunction:
    """
    φ^{-1}(1/H(μ(A)))·χ_A, a unit vector of the space.

    Raises:
        PreconditionError: If μ(A) = 0
    """
    m = subset.measure
    if m == 0:
        raise PreconditionError("normalized indicator needs 0 < μ(A)")
    return SimpleFunction.indicator(subset, ctx.phi.inverse(reciprocal(float(ctx.weight.cumulative(m)))))


__all__ = [
    'NormContext',
    'modular',
    'luxemburg_norm',
    'luxemburg_bracket',
    'indicator_norm',
    'sup_norm',
    'intersection_norm',
    'normalized_indicator',
]
