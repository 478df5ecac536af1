"""
Catalog of Lorentz weight functions with closed-form cumulative integrals.

    constant(c)                     h = c                 H(u) = c·u
    power(alpha), -1 < alpha <= 0   h = t^alpha           H(u) = u^(alpha+1)/(alpha+1)
    exponential(beta)               h = e^(-beta t)       H(u) = (1 − e^(-beta u))/beta
    piecewise_constant              step weight           H(u) = exact breakpoint sum
"""

import math
from typing import Any, Dict, Sequence

import numpy as np

from ..exceptions import ValidationError
from .base import WeightFunction


class ConstantWeight(WeightFunction):
    """h ≡ c. With c = 1 the Orlicz–Lorentz space is the Orlicz space."""

    kind = 'constant'

    def __init__(self, c: float = 1.0):
        c = float(c)
        if not c > 0 or math.isinf(c):
            raise ValidationError(f"constant weight: c must be finite and > 0, got {c}")
        self.c = c

    @property
    def params(self) -> Dict[str, Any]:
        return {'c': self.c}

    @property
    def is_constant(self) -> bool:
        return True

    def _density(self, t: np.ndarray) -> np.ndarray:
        return np.full_like(t, self.c)

    def _cumulative(self, u: np.ndarray) -> np.ndarray:
        return self.c * u


class PowerWeight(WeightFunction):
    """h(t) = t^alpha with -1 < alpha <= 0 (integrable singularity at 0)."""

    kind = 'power'

    def __init__(self, alpha: float = -0.5):
        alpha = float(alpha)
        if not -1.0 < alpha <= 0.0:
            raise ValidationError(f"power weight: alpha must lie in (-1, 0], got {alpha}")
        self.alpha = alpha

    @property
    def params(self) -> Dict[str, Any]:
        return {'alpha': self.alpha}

    @property
    def is_constant(self) -> bool:
        return self.alpha == 0.0

    def _density(self, t: np.ndarray) -> np.ndarray:
        return np.power(t, self.alpha)

    def _cumulative(self, u: np.ndarray) -> np.ndarray:
        exponent = self.alpha + 1.0
        return np.power(u, exponent) / exponent


class ExponentialWeight(WeightFunction):
    """h(t) = e^(-beta t); H is bounded by 1/beta."""

    kind = 'exponential'

    def __init__(self, beta: float = 1.0):
        beta = float(beta)
        if not beta > 0 or math.isinf(beta):
            raise ValidationError(f"exponential weight: beta must be finite and > 0, got {beta}")
        self.beta = beta

    @property
    def params(self) -> Dict[str, Any]:
        return {'beta': self.beta}

    def _density(self, t: np.ndarray) -> np.ndarray:
        return np.exp(-self.beta * t)

    def _cumulative(self, u: np.ndarray) -> np.ndarray:
        return -np.expm1(-self.beta * u) / self.beta


class PiecewiseConstantWeight(WeightFunction):
    """
    Step weight: ``values[0]`` on [0, b_0), ``values[j]`` on [b_{j-1}, b_j),
    and ``values[-1]`` on [b_last, ∞).

    Args:
        breakpoints: Strictly increasing positive breakpoints
        values: Positive, non-increasing values, one more than breakpoints
    """

    kind = 'piecewise_constant'

    def __init__(self, breakpoints: Sequence[float], values: Sequence[float]):
        breakpoints = np.asarray(breakpoints, dtype=float)
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or breakpoints.ndim != 1 or len(values) != len(breakpoints) + 1:
            raise ValidationError(
                "piecewise_constant weight: need len(values) == len(breakpoints) + 1"
            )
        if np.any(breakpoints <= 0) or np.any(np.diff(breakpoints) <= 0) or np.any(np.isinf(breakpoints)):
            raise ValidationError("piecewise_constant weight: breakpoints must be finite, positive, increasing")
        if np.any(values <= 0) or np.any(np.diff(values) > 0) or np.any(np.isinf(values)):
            raise ValidationError("piecewise_constant weight: values must be finite, positive, non-increasing")

        self.breakpoints = breakpoints
        self.values = values
        # H at each breakpoint, exact up to rounding of the partial sums
        widths = np.diff(np.concatenate(([0.0], breakpoints)))
        self._knots = np.concatenate(([0.0], np.cumsum(widths * values[:-1])))

    @property
    def params(self) -> Dict[str, Any]:
        return {'breakpoints': self.breakpoints.tolist(), 'values': self.values.tolist()}

    @property
    def is_constant(self) -> bool:
        return bool(np.all(self.values == self.values[0]))

    def _segment(self, t: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.breakpoints, t, side='right')

    def _density(self, t: np.ndarray) -> np.ndarray:
        return self.values[self._segment(t)]

    def _cumulative(self, u: np.ndarray) -> np.ndarray:
        j = self._segment(u)
        left = np.concatenate(([0.0], self.breakpoints))[j]
        with np.errstate(invalid='ignore'):
            out = self._knots[j] + self.values[j] * (u - left)
        return np.where(np.isinf(u), np.inf, out)


__all__ = [
    'ConstantWeight',
    'PowerWeight',
    'ExponentialWeight',
    'PiecewiseConstantWeight',
]
