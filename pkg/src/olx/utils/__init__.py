"""
Seeded random generators for olx.

``OLX_SEED`` in the environment seeds every generator that is not given an
explicit seed, so a failing randomized run can be reproduced.
"""

import os
from typing import List, Optional

import numpy as np

from ..gauges import (
    ConstantWeight,
    ExpMinusOneFunction,
    ExponentialWeight,
    FlatStartFunction,
    NegLogFunction,
    OrliczFunction,
    PiecewiseConstantWeight,
    PowerFunction,
    PowerLogFunction,
    PowerWeight,
    WeightFunction,
)
from ..measure import Atom, AtomicMeasureSpace, MeasurableSet, SimpleFunction

SEED_ENV = 'OLX_SEED'
DEFAULT_SEED = 0


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """Explicit seed, else ``OLX_SEED``, else 0."""
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, DEFAULT_SEED))
    return np.random.default_rng(seed)


def atom_window(space: AtomicMeasureSpace, radius: int = 10) -> List[Atom]:
    """Atoms to draw from: all labels of a finite space, else a window around 0."""
    if space.domain == 'finite':
        return list(space.labels)
    if space.domain == 'naturals':
        return list(range(0, 2 * radius + 1))
    return list(range(-radius, radius + 1))


def random_set(
    space: AtomicMeasureSpace,
    rng: np.random.Generator,
    max_atoms: int = 4,
    radius: int = 10,
) -> MeasurableSet:
    """Non-empty random set of at most ``max_atoms`` atoms."""
    window = atom_window(space, radius)
    size = int(rng.integers(1, min(max_atoms, len(window)) + 1))
    picks = rng.choice(len(window), size=size, replace=False)
    return MeasurableSet.of(space, [window[i] for i in picks])


def random_simple_function(
    space: AtomicMeasureSpace,
    rng: np.random.Generator,
    max_atoms: int = 12,
    radius: int = 10,
    levels: Optional[int] = None,
) -> SimpleFunction:
    """
    Non-zero random simple function.

    Values are drawn from ``levels`` distinct magnitudes when given, so ties
    in |g| are exercised.
    """
    subset = random_set(space, rng, max_atoms, radius)
    if levels is None:
        values = rng.uniform(-5.0, 5.0, size=len(subset))
    else:
        palette = rng.uniform(0.1, 5.0, size=levels)
        values = rng.choice(palette, size=len(subset)) * rng.choice([-1.0, 1.0], size=len(subset))
    values[values == 0.0] = 1.0
    return SimpleFunction(dict(zip(subset.sorted_atoms(), values.tolist())), space)


def random_orlicz_function(rng: np.random.Generator) -> OrliczFunction:
    """One member of the Orlicz catalog with random parameters."""
    choice = int(rng.integers(0, 5))
    if choice == 0:
        return PowerFunction(p=float(rng.uniform(1.0, 4.0)))
    if choice == 1:
        return PowerLogFunction()
    if choice == 2:
        return ExpMinusOneFunction()
    if choice == 3:
        return NegLogFunction()
    return FlatStartFunction(c=float(rng.uniform(0.1, 2.0)))


def random_weight_function(rng: np.random.Generator) -> WeightFunction:
    """One member of the weight catalog with random parameters."""
    choice = int(rng.integers(0, 4))
    if choice == 0:
        return ConstantWeight(c=float(rng.uniform(0.5, 2.0)))
    if choice == 1:
        return PowerWeight(alpha=float(rng.uniform(-0.9, 0.0)))
    if choice == 2:
        return ExponentialWeight(beta=float(rng.uniform(0.1, 2.0)))
    breakpoints = np.sort(rng.uniform(0.1, 10.0, size=3))
    values = np.sort(rng.uniform(0.1, 3.0, size=4))[::-1]
    return PiecewiseConstantWeight(breakpoints.tolist(), values.tolist())


__all__ = [
    'SEED_ENV',
    'make_rng',
    'atom_window',
    'random_set',
    'random_simple_function',
    'random_orlicz_function',
    'random_weight_function',
]
