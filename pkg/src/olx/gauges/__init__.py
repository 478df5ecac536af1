"""
Gauges for olx: the Orlicz function and weight function catalogs.
"""

from typing import Any, Dict

from ..exceptions import ValidationError
from .base import Delta2Report, OrliczFunction, WeightFunction, reciprocal
from .orlicz import (
    ExpMinusOneFunction,
    FlatStartFunction,
    NegLogFunction,
    PowerFunction,
    PowerLogFunction,
)
from .weights import (
    ConstantWeight,
    ExponentialWeight,
    PiecewiseConstantWeight,
    PowerWeight,
)


# Global gauge registries
ORLICZ_REGISTRY = {
    'power': PowerFunction,
    'power_log': PowerLogFunction,
    'exp_minus_one': ExpMinusOneFunction,
    'neg_log': NegLogFunction,
    'flat_start': FlatStartFunction,
}

WEIGHT_REGISTRY = {
    'constant': ConstantWeight,
    'power': PowerWeight,
    'exponential': ExponentialWeight,
    'piecewise_constant': PiecewiseConstantWeight,
}


def get_orlicz_function(kind: str) -> type:
    """
    Get Orlicz function class by kind.

    Raises:
        ValidationError: If the kind is not in the catalog
    """
    if kind not in ORLICZ_REGISTRY:
        raise ValidationError(
            f"Unknown Orlicz function kind: {kind}. "
            f"Available kinds: {list(ORLICZ_REGISTRY.keys())}"
        )
    return ORLICZ_REGISTRY[kind]


def get_weight_function(kind: str) -> type:
    """
    Get weight function class by kind.

    Raises:
        ValidationError: If the kind is not in the catalog
    """
    if kind not in WEIGHT_REGISTRY:
        raise ValidationError(
            f"Unknown weight function kind: {kind}. "
            f"Available kinds: {list(WEIGHT_REGISTRY.keys())}"
        )
    return WEIGHT_REGISTRY[kind]


def _build(cls: type, spec: Dict[str, Any], **extra) -> Any:
    params = {k: v for k, v in spec.items() if k != 'kind'}
    try:
        return cls(**params, **extra)
    except TypeError as e:
        raise ValidationError(f"Invalid parameters for {cls.kind}: {e}") from e


def make_orlicz_function(spec: Dict[str, Any], **config) -> OrliczFunction:
    """Build an Orlicz function from ``{"kind": ..., **params}``."""
    return _build(get_orlicz_function(spec.get('kind')), spec, **config)


def make_weight_function(spec: Dict[str, Any]) -> WeightFunction:
    """Build a weight function from ``{"kind": ..., **params}``."""
    return _build(get_weight_function(spec.get('kind')), spec)


__all__ = [
    'OrliczFunction',
    'WeightFunction',
    'Delta2Report',
    'reciprocal',
    'ORLICZ_REGISTRY',
    'WEIGHT_REGISTRY',
    'get_orlicz_function',
    'get_weight_function',
    'make_orlicz_function',
    'make_weight_function',
    'PowerFunction',
    'PowerLogFunction',
    'ExpMinusOneFunction',
    'NegLogFunction',
    'FlatStartFunction',
    'ConstantWeight',
    'PowerWeight',
    'ExponentialWeight',
    'PiecewiseConstantWeight',
]
