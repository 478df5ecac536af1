"""
Catalog of Orlicz functions.

    power(p)        φ(s) = s^p, p ≥ 1
    power_log       φ(s) = s·ln(1+s)
    exp_minus_one   φ(s) = e^s − 1
    neg_log         φ(s) = −ln(1−s) for s < 1, +inf otherwise
    flat_start(c)   φ(s) = max(0, s − c)²
"""

import math
from typing import Dict, Optional, Tuple

import numpy as np

from ..exceptions import ValidationError
from .base import OrliczFunction


class PowerFunction(OrliczFunction):
    """
    φ(s) = s^p.

    With h ≡ 1 the Luxemburg norm is the weighted L^p norm; p = 1 gives the
    Lorentz space.
    """

    kind = 'power'
    delta2_all_s = True

    def __init__(self, p: float = 2.0, **config):
        super().__init__(**config)
        p = float(p)
        if not p >= 1:
            raise ValidationError(f"power: p must be >= 1, got {p}")
        self.p = p

    @property
    def params(self) -> Dict[str, float]:
        return {'p': self.p}

    @property
    def delta2_constant(self) -> Optional[float]:
        return 2.0 ** self.p

    @property
    def transport_exponent(self) -> Optional[float]:
        return 1.0 / self.p

    def _evaluate(self, s: np.ndarray) -> np.ndarray:
        return np.power(s, self.p)

    def _closed_inverse(self, y: float) -> Optional[float]:
        if self.p == 1.0:
            return y
        return y ** (1.0 / self.p)


class PowerLogFunction(OrliczFunction):
    """φ(s) = s·ln(1+s); Δ2 holds with M = 4 (the ratio tends to 4 as s → 0)."""

    kind = 'power_log'
    delta2_all_s = True

    @property
    def params(self) -> Dict[str, float]:
        return {}

    @property
    def delta2_constant(self) -> Optional[float]:
        return 4.0

    def _evaluate(self, s: np.ndarray) -> np.ndarray:
        return s * np.log1p(s)


class ExpMinusOneFunction(OrliczFunction):
    """φ(s) = e^s − 1; fails Δ2 since φ(2s)/φ(s) = e^s + 1."""

    kind = 'exp_minus_one'

    @property
    def params(self) -> Dict[str, float]:
        return {}

    def _evaluate(self, s: np.ndarray) -> np.ndarray:
        return np.expm1(s)

    def _closed_inverse(self, y: float) -> Optional[float]:
        return math.log1p(y)


class NegLogFunction(OrliczFunction):
    """φ(s) = −ln(1−s) on [0, 1), +inf from b_φ = 1 on."""

    kind = 'neg_log'

    @property
    def params(self) -> Dict[str, float]:
        return {}

    @property
    def bounds(self) -> Tuple[float, float]:
        return (0.0, 1.0)

    def _evaluate(self, s: np.ndarray) -> np.ndarray:
        return np.where(s < 1.0, -np.log1p(-np.minimum(s, 1.0)), math.inf)

    def _closed_inverse(self, y: float) -> Optional[float]:
        return -math.expm1(-y)


class FlatStartFunction(OrliczFunction):
    """φ(s) = max(0, s − c)²; vanishes on [0, c], so a_φ = c."""

    kind = 'flat_start'

    def __init__(self, c: float = 1.0, **config):
        super().__init__(**config)
        c = float(c)
        if not c > 0:
            raise ValidationError(f"flat_start: c must be > 0, got {c}")
        self.c = c

    @property
    def params(self) -> Dict[str, float]:
        return {'c': self.c}

    @property
    def bounds(self) -> Tuple[float, float]:
        return (self.c, math.inf)

    def _evaluate(self, s: np.ndarray) -> np.ndarray:
        return np.square(np.maximum(0.0, s - self.c))

    def _closed_inverse(self, y: float) -> Optional[float]:
        return self.c + math.sqrt(y)


__all__ = [
    'PowerFunction',
    'PowerLogFunction',
    'ExpMinusOneFunction',
    'NegLogFunction',
    'FlatStartFunction',
]
