"""
Base classes for olx gauges: Orlicz functions and Lorentz weight functions.

Both families are closed catalogs. Each member is a subclass of the abstract
base classes below and registers itself under a ``kind`` string.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from scipy.optimize import bisect

from ..exceptions import DomainError, InvariantError

logger = logging.getLogger(__name__)

INVERSE_RTOL = 1e-12
MAX_ITERATIONS = 200

ArrayLike = Union[float, np.ndarray]


def reciprocal(x: float) -> float:
    """Extended-real reciprocal on [0, +inf]: 1/0 = +inf and 1/inf = 0."""
    if x == 0:
        return math.inf
    if math.isinf(x):
        return 0.0
    return 1.0 / x


def _as_nonnegative(x: ArrayLike, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError(f"{name} must be non-negative, got {x!r}")
    return arr


def _unwrap(arr: np.ndarray) -> ArrayLike:
    return float(arr) if arr.ndim == 0 else arr


@dataclass(frozen=True)
class Delta2Report:
    """Outcome of probing the Δ2 condition φ(2s) ≤ Mφ(s)."""

    satisfies_all_s: bool
    numeric_sup_ratio: float
    grid_max: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class OrliczFunction(ABC):
    """
    Abstract base class for catalog Orlicz functions.

    An Orlicz function is convex on [0, b_φ), vanishes at 0 and grows to
    +inf. Subclasses implement ``_evaluate`` on non-negative arrays and
    declare the analytic Δ2 flag; closed-form inverses are optional.
    """

    kind: str = ''

    #: analytic flag for φ(2s) ≤ Mφ(s) for all s > 0
    delta2_all_s: bool = False

    def __init__(self, inverse_rtol: float = INVERSE_RTOL, max_iterations: int = MAX_ITERATIONS):
        self.inverse_rtol = inverse_rtol
        self.max_iterations = max_iterations

    @abstractmethod
    def _evaluate(self, s: np.ndarray) -> np.ndarray:
        """Evaluate φ on a non-negative array."""
        pass

    @property
    @abstractmethod
    def params(self) -> Dict[str, float]:
        """Catalog parameters of this function."""
        pass

    @property
    def bounds(self) -> Tuple[float, float]:
        """
        Return (a_φ, b_φ).

        a_φ is the largest zero of φ and b_φ the finiteness threshold.
        """
        return (0.0, math.inf)

    @property
    def delta2_constant(self) -> Optional[float]:
        """Analytic Δ2 constant M, or None when Δ2 fails for some s."""
        return None

    @property
    def transport_exponent(self) -> Optional[float]:
        """Exponent e with φ^{-1}(ky)/φ^{-1}(y) = k^e, when φ is homogeneous."""
        return None

    def __call__(self, s: ArrayLike) -> ArrayLike:
        """
        Evaluate φ(s).

        Raises:
            DomainError: If any s is negative
        """
        arr = _as_nonnegative(s, 's')
        with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
            out = np.where(np.isinf(arr), math.inf, self._evaluate(np.where(np.isinf(arr), 0.0, arr)))
        return _unwrap(np.asarray(out, dtype=float))

    def inverse(self, y: float) -> float:
        """
        Generalized inverse inf{s ≥ 0 : φ(s) ≥ y}.

        Returns a_φ at y = 0, b_φ at y = +inf (which is +inf when φ is finite
        everywhere). Kinds without a closed form are inverted by bisection.

        Raises:
            DomainError: If y is negative
        """
        y = float(_as_nonnegative(y, 'y'))
        a_phi, b_phi = self.bounds
        if y == 0:
            return a_phi
        if math.isinf(y):
            return b_phi

        closed = self._closed_inverse(y)
        if closed is not None:
            return closed
        return self._bisect_inverse(y)

    def _closed_inverse(self, y: float) -> Optional[float]:
        return None

    def _bisect_inverse(self, y: float) -> float:
        a_phi, _ = self.bounds
        lo = a_phi
        hi = max(2.0 * a_phi, 1.0)
        for _ in range(self.max_iterations):
            if self(hi) >= y:
                break
            lo, hi = hi, 2.0 * hi
        else:
            raise InvariantError(f"{self!r}: no upper bracket for inverse at y={y}")

        logger.debug("Inverting %r at y=%g on [%g, %g]", self, y, lo, hi)
        return bisect(
            lambda s: self(s) - y,
            lo,
            hi,
            xtol=np.finfo(float).tiny,
            rtol=self.inverse_rtol,
            maxiter=self.max_iterations,
        )

    def delta2_report(self, grid_max: float, points: int = 1000) -> Delta2Report:
        """
        Probe the Δ2 ratio φ(2s)/φ(s) on a logarithmic grid in (0, grid_max].

        Grid points where φ(s) = 0 are skipped.
        """
        if not grid_max > 0:
            raise DomainError(f"grid_max must be positive, got {grid_max!r}")

        grid = np.geomspace(grid_max * 1e-9, grid_max, points)
        base = np.asarray(self(grid))
        doubled = np.asarray(self(2.0 * grid))
        mask = base > 0
        if not np.any(mask):
            ratio = math.inf
        else:
            with np.errstate(over='ignore', invalid='ignore'):
                ratio = float(np.max(doubled[mask] / base[mask]))

        return Delta2Report(
            satisfies_all_s=self.delta2_all_s,
            numeric_sup_ratio=ratio,
            grid_max=float(grid_max),
        )

    def check_convexity(self, grid: Optional[np.ndarray] = None, tolerance: float = 1e-12) -> bool:
        """
        Check monotonicity and midpoint convexity on all pairs of a grid.

        Only grid points inside [0, b_φ) are used.
        """
        _, b_phi = self.bounds
        if grid is None:
            upper = min(b_phi * (1 - 1e-6), 20.0)
            grid = np.linspace(0.0, upper, 41)
        grid = np.asarray(grid, dtype=float)
        grid = np.sort(grid[grid < b_phi])

        values = np.asarray(self(grid))
        if np.any(np.diff(values) < -tolerance * np.maximum(1.0, np.abs(values[1:]))):
            return False

        left, right = np.meshgrid(grid, grid)
        mid = np.asarray(self((left + right) / 2))
        chord = (np.asarray(self(left)) + np.asarray(self(right))) / 2
        return bool(np.all(mid <= chord + tolerance * np.maximum(1.0, np.abs(chord))))

    def forward_transport_bound(self, k: float) -> float:
        """
        Bound k' with ||χ_B|| ≤ k'||χ_A|| whenever H(μ(B)) ≤ k·H(μ(A)).

        Convexity alone gives φ(ks) ≥ kφ(s) for k ≥ 1, hence k' ≤ max(1, k).
        """
        if self.transport_exponent is not None:
            return k ** self.transport_exponent
        return max(1.0, k)

    def converse_transport_bound(self, k_prime: float) -> float:
        """
        Bound k with H(μ(B)) ≤ k·H(μ(A)) whenever ||χ_B|| ≤ k'||χ_A||.

        Uses the Δ2 constant M: k ≤ M^ceil(log2 max(1, k')).
        """
        if self.transport_exponent is not None:
            return k_prime ** (1.0 / self.transport_exponent)
        m = self.delta2_constant
        if m is None:
            return math.inf
        return m ** math.ceil(math.log2(max(1.0, k_prime)))

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, **self.params}

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self.params == other.params

    def __hash__(self) -> int:
        return hash((self.kind, tuple(sorted(self.params.items()))))

    def __repr__(self) -> str:
        args = ', '.join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.__class__.__name__}({args})"


class WeightFunction(ABC):
    """
    Abstract base class for catalog Lorentz weights.

    A weight h is positive and non-increasing on (0, ∞); subclasses supply
    h and its exact cumulative integral H(u) = ∫₀ᵘ h(t) dt.
    """

    kind: str = ''

    @abstractmethod
    def _density(self, t: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _cumulative(self, u: np.ndarray) -> np.ndarray:
        pass

    @property
    @abstractmethod
    def params(self) -> Dict[str, Any]:
        pass

    @property
    def is_constant(self) -> bool:
        return False

    def __call__(self, t: ArrayLike) -> ArrayLike:
        """Evaluate h(t) for t ≥ 0."""
        arr = _as_nonnegative(t, 't')
        with np.errstate(divide='ignore'):
            return _unwrap(np.asarray(self._density(arr), dtype=float))

    def cumulative(self, u: ArrayLike) -> ArrayLike:
        """
        Exact H(u) = ∫₀ᵘ h(t) dt, with H(0) = 0.

        Raises:
            DomainError: If u is negative
        """
        arr = _as_nonnegative(u, 'u')
        return _unwrap(np.asarray(self._cumulative(arr), dtype=float))

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, **self.params}

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(repr(self))

    def __repr__(self) -> str:
        args = ', '.join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.__class__.__name__}({args})"
