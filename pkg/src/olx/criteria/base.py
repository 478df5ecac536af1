"""
Base classes for the finite-horizon divergence criteria.

Every criterion scans a target sequence

    s_n = φ^{-1}(1/H(μ(τ^{∓n}(A))))

for n ≤ N against a threshold T. A witness is the first index with s_n ≥ T.
Divergence that only happens through an empty image set is reported as
``DegenerateNullPreimage`` and never as genuine divergence.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from ..exceptions import PreconditionError, ValidationError
from ..gauges import reciprocal
from ..measure import MeasurableSet
from ..norms import NormContext
from ..transformations import Transformation

CRITERION_IDS = ('L1a', 'L1b', 'T21a', 'T21b', 'T22i', 'T22ii', 'T23c', 'T23d', 'T23e', 'T23f')


class CriterionStatus(str, Enum):
    WITNESSED = 'WitnessedDivergence'
    BOUNDED = 'BoundedAtHorizon'
    DEGENERATE = 'DegenerateNullPreimage'
    POSITIVE_LIMINF = 'PositiveLiminfWitnessed'
    LIMINF_NOT_SEPARATED = 'LiminfNotSeparated'


class Witness(NamedTuple):
    n: int
    value: float


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one criterion at a finite horizon and threshold."""

    criterion_id: str
    status: CriterionStatus
    witness: Optional[Witness]
    horizon: int
    threshold: float
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.criterion_id not in CRITERION_IDS:
            raise ValidationError(f"Unknown criterion id: {self.criterion_id}. Available ids: {list(CRITERION_IDS)}")
        if self.status in (CriterionStatus.WITNESSED, CriterionStatus.POSITIVE_LIMINF):
            if self.witness is None or not self.witness.value >= self.threshold:
                raise ValidationError(f"{self.criterion_id}: a witnessed verdict needs a witness value ≥ T")

    @property
    def is_witnessed(self) -> bool:
        return self.status in (CriterionStatus.WITNESSED, CriterionStatus.POSITIVE_LIMINF)

    @property
    def claims_divergence(self) -> bool:
        """Witnessed, or divergent only through an empty image set."""
        return self.is_witnessed or self.status is CriterionStatus.DEGENERATE

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'criterion': self.criterion_id,
            'status': self.status.value,
            'witness': None if self.witness is None else {'n': self.witness.n, 'value': self.witness.value},
            'horizon': self.horizon,
            'threshold': self.threshold,
        }
        if self.details:
            data['details'] = self.details
        return data


@dataclass(frozen=True)
class SetFamily:
    """
    Truncated countable family {A_i} with a subsequence γ_k.

    ``subsequence=None`` stands for γ_k = k, i.e. every n = 1..N.
    """

    sets: Tuple[MeasurableSet, ...]
    subsequence: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        sets = tuple(self.sets)
        if not sets:
            raise ValidationError("set family is empty")
        for i, s in enumerate(sets):
            if s.is_empty:
                raise ValidationError(f"set family: A_{i} is empty")
        object.__setattr__(self, 'sets', sets)

        if self.subsequence is not None:
            gamma = tuple(int(g) for g in self.subsequence)
            if not gamma:
                raise PreconditionError("set family: empty subsequence")
            if gamma[0] < 1 or any(b <= a for a, b in zip(gamma, gamma[1:])):
                raise ValidationError(f"set family: subsequence must be strictly increasing positive integers, got {gamma}")
            object.__setattr__(self, 'subsequence', gamma)

    @classmethod
    def arithmetic(cls, sets: Sequence[MeasurableSet], count: int, start: int = 1, step: int = 1) -> 'SetFamily':
        return cls(tuple(sets), tuple(start + k * step for k in range(count)))

    @classmethod
    def geometric(cls, sets: Sequence[MeasurableSet], count: int, start: int = 1, ratio: int = 2) -> 'SetFamily':
        return cls(tuple(sets), tuple(start * ratio ** k for k in range(count)))

    def indices(self, horizon: int) -> List[int]:
        if self.subsequence is None:
            return list(range(1, horizon + 1))
        return [g for g in self.subsequence if g <= horizon]

    def __len__(self) -> int:
        return len(self.sets)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'sets': [[str(a) for a in s] for s in self.sets],
            'subsequence': None if self.subsequence is None else list(self.subsequence),
        }


def target_value(ctx: NormContext, m: float) -> float:
    """s(m) = φ^{-1}(1/H(m)); m = 0 gives φ^{-1}(+inf) = b_φ."""
    return ctx.phi.inverse(reciprocal(float(ctx.weight.cumulative(m))))


def scan_divergence(
    ctx: NormContext,
    images: Iterable[Tuple[int, MeasurableSet]],
    criterion_id: str,
    horizon: int,
    threshold: float,
    details: Optional[Dict[str, Any]] = None,
) -> CriterionVerdict:
    """
    Divergence contract over (n, image set) pairs.

    Stops at the first genuine witness. An empty image makes every later
    preimage empty as well, so the scan also stops there.
    """
    details = dict(details or {})
    first_null = None
    for n, image in images:
        if image.is_empty:
            first_null = n
            break
        s = target_value(ctx, image.measure)
        if s >= threshold:
            return CriterionVerdict(criterion_id, CriterionStatus.WITNESSED, Witness(n, s), horizon, threshold, details)

    if first_null is not None:
        details['first_null_index'] = first_null
        value = target_value(ctx, 0.0)
        if value >= threshold:
            return CriterionVerdict(
                criterion_id, CriterionStatus.DEGENERATE, Witness(first_null, value), horizon, threshold, details
            )
    return CriterionVerdict(criterion_id, CriterionStatus.BOUNDED, None, horizon, threshold, details)


def require_positive_measure(subset: MeasurableSet) -> None:
    """
    Raises:
        PreconditionError: If μ(A) = 0
    """
    if subset.is_empty:
        raise PreconditionError("criterion needs 0 < μ(A) < inf")


class Criterion(ABC):
    """
    Abstract base class for the criteria checkers.

    All criteria must implement:
    - evaluate(): run the checker and return its verdicts or report
    """

    check_id: str = ''
    description: str = ''

    def __init__(self, **config):
        """
        Args:
            **config: Horizon, threshold and the other run settings
        """
        self.config = config

    @abstractmethod
    def evaluate(self, ctx: NormContext, t: Transformation, subset: Optional[MeasurableSet] = None, **kwargs) -> List[Any]:
        """
        Run the checker.

        Returns:
            List of results, each with ``to_dict()``
        """
        pass

    def interpret(self, verdict: CriterionVerdict) -> str:
        """One-line human reading of a verdict."""
        if verdict.witness is None:
            return f"{verdict.criterion_id}: {verdict.status.value} up to n={verdict.horizon}"
        return (
            f"{verdict.criterion_id}: {verdict.status.value} at n={verdict.witness.n} "
            f"(value {verdict.witness.value:.6g} vs T={verdict.threshold:g})"
        )

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(config={self.config})"


__all__ = [
    'CRITERION_IDS',
    'CriterionStatus',
    'Witness',
    'CriterionVerdict',
    'SetFamily',
    'Criterion',
    'target_value',
    'scan_divergence',
    'require_positive_measure',
]
