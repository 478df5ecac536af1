"""
Non-singular self-maps of the atom index set.

Every catalog transformation has exact n-fold preimages, so the measure
sequences μ(τ^{-n}(A)) and μ(τ^n(A)) that drive the criteria are computed
without approximation. Since every atom has positive mass, the only null set
is ∅ and every total map is non-singular.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from .exceptions import DomainError, PreconditionError, ValidationError
from .measure import Atom, AtomicMeasureSpace, MeasurableSet

logger = logging.getLogger(__name__)

PREIMAGE = 'preimage'
FORWARD = 'forward'


@dataclass(frozen=True)
class InjectivityProbe:
    """Result of an injectivity check; ``counterexample`` is a colliding pair."""

    injective: bool
    counterexample: Optional[Tuple[Atom, Atom]] = None

    def __bool__(self) -> bool:
        return self.injective


@dataclass(frozen=True)
class MeasureSequence:
    """
    values[n] = μ(τ^{∓n}(A)) for n = 0..N.

    ``null[n]`` marks an empty image set; a non-empty set whose mass
    underflows to 0.0 is not null.
    """

    direction: str
    base_set: MeasurableSet
    values: Tuple[float, ...]
    null: Tuple[bool, ...]

    @property
    def horizon(self) -> int:
        return len(self.values) - 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            'direction': self.direction,
            'base_set': [str(a) for a in self.base_set],
            'values': list(self.values),
            'null': list(self.null),
        }


class Transformation(ABC):
    """
    Abstract base class for catalog transformations τ: X → X.

    Subclasses provide the one-step map and exact n-fold preimages.
    """

    kind: str = ''

    def __init__(self, space: AtomicMeasureSpace):
        self.space = space

    @abstractmethod
    def apply(self, atom: Atom) -> Atom:
        """τ(atom)."""
        pass

    @abstractmethod
    def preimage_atoms(self, atoms: FrozenSet[Atom], n: int) -> FrozenSet[Atom]:
        """{i : τ^n(i) ∈ atoms}."""
        pass

    @property
    @abstractmethod
    def params(self) -> Dict[str, Any]:
        pass

    @property
    def is_injective(self) -> bool:
        return True

    def image_atoms(self, atoms: FrozenSet[Atom], n: int) -> FrozenSet[Atom]:
        """τ^n(atoms) for n ≥ 0."""
        current = frozenset(atoms)
        for _ in range(n):
            current = frozenset(self.apply(a) for a in current)
        return current

    def pull_back(self, values: Mapping[Atom, float], n: int) -> Dict[Atom, float]:
        """Values of g∘τ^n from the values of g."""
        out: Dict[Atom, float] = {}
        for atom, value in values.items():
            for source in self.preimage_atoms(frozenset([atom]), n):
                out[source] = value
        return out

    def injectivity_probe(self, window: Optional[Iterable[Atom]] = None) -> InjectivityProbe:
        return InjectivityProbe(True)

    def inverse(self) -> 'Transformation':
        """
        The inverse map.

        Raises:
            PreconditionError: If τ is not a bijection
        """
        raise PreconditionError(f"{self.kind} has no inverse")

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, **self.params}

    def __repr__(self) -> str:
        args = ', '.join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.__class__.__name__}({args})"


class Identity(Transformation):

    kind = 'identity'

    def apply(self, atom: Atom) -> Atom:
        return atom

    def preimage_atoms(self, atoms: FrozenSet[Atom], n: int) -> FrozenSet[Atom]:
        return frozenset(atoms)

    def image_atoms(self, atoms: FrozenSet[Atom], n: int) -> FrozenSet[Atom]:
        return frozenset(atoms)

    def pull_back(self, values: Mapping[Atom, float], n: int) -> Dict[Atom, float]:
        return dict(values)

    def inverse(self) -> 'Transformation':
        return self

    @property
    def params(self) -> Dict[str, Any]:
        return {}


class IntegerShift(Transformation):
    """τ(i) = i + offset on ℤ; a bijection."""

    kind = 'shift_z'

    def __init__(self, space: AtomicMeasureSpace, offset: int = 1):
        super().__init__(space)
        if space.domain != 'integers':
            raise ValidationError(f"shift_z needs the integers domain, got {space.domain}")
        if isinstance(offset, bool) or int(offset) != offset:
            raise ValidationError(f"shift_z: offset must be an integer, got {offset!r}")
        self.offset = int(offset)

    def apply(self, atom: Atom) -> Atom:
        return atom + self.offset

    def preimage_atoms(self, atoms: FrozenSet[Atom], n: int) -> FrozenSet[Atom]:
        shift = n * self.offset
        return frozenset(a - shift for a in atoms)

    def image_atoms(self, atoms: FrozenSet[Atom], n: int) -> FrozenSet[Atom]:
        shift = n * self.offset
        return frozenset(a + shift for a in atoms)

    def pull_back(self, values: Mapping[Atom, float], n: int) -> Dict[Atom, float]:
        shift = n * self.offset
        return {a - shift: v for a, v in values.items()}

    def inverse(self) -> 'Transformation':
        return IntegerShift(self.space, -self.offset)

    @property
    def params(self) -> Dict[str, Any]:
        return {'offset': self.offset}


class NaturalShift(Transformation):
    """τ(n) = n + 1 on ℕ = {0, 1, ...}; injective, not surjective."""

    kind = 'shift_n'

    def __init__(self, space: AtomicMeasureSpace):
        super().__init__(space)
        if space.domain != 'naturals':
            raise ValidationError(f"shift_n needs the naturals domain, got {space.domain}")

    def apply(self, atom: Atom) -> Atom:
        return atom + 1

    def preimage_atoms(self, atoms: FrozenSet[Atom], n: int) -> FrozenSet[Atom]:
        return frozenset(a - n for a in atoms if a >= n)

    def image_atoms(self, atoms: FrozenSet[Atom], n: int) -> FrozenSet[Atom]:
        return frozenset(a + n for a in atoms)

    def pull_back(self, values: Mapping[Atom, float], n: int) -> Dict[Atom, float]:
        return {a - n: v for a, v in values.items() if a >= n}

    @property
    def params(self) -> Dict[str, Any]:
        return {}


class FiniteMap(Transformation):
    """
    Total map on a finite domain given as a table atom -> atom.

    Args:
        space: Finite measure space
        table: Image of every atom
    """

    kind = 'finite_map'

    def __init__(self, space: AtomicMeasureSpace, table: Mapping[Atom, Atom]):
        super().__init__(space)
        if space.domain != 'finite':
            raise ValidationError(f"finite_map needs a finite domain, got {space.domain}")
        table = dict(table)
        missing = [a for a in space.labels if a not in table]
        if missing:
            raise ValidationError(f"finite_map is not total: no image for {missing}")
        stray = [a for a in list(table) + list(table.values()) if not space.contains(a)]
        if stray:
            raise ValidationError(f"finite_map refers to atoms outside the domain: {stray}")
        self.table = table
        self._sources: Dict[Atom, List[Atom]] = {}
        for source, target in table.items():
            self._sources.setdefault(target, []).append(source)

    def apply(self, atom: Atom) -> Atom:
        return self.table[atom]

    def preimage_atoms(self, atoms: FrozenSet[Atom], n: int) -> FrozenSet[Atom]:
        current = frozenset(atoms)
        for _ in range(n):
            if not current:
                break
            current = frozenset(s for a in current for s in self._sources.get(a, ()))
        return current

    @property
    def is_injective(self) -> bool:
        return bool(self.injectivity_probe())

    def injectivity_probe(self, window: Optional[Iterable[Atom]] = None) -> InjectivityProbe:
        atoms = self.space.labels if window is None else [a for a in window if a in self.table]
        seen: Dict[Atom, Atom] = {}
        for atom in atoms:
            target = self.table[atom]
            if target in seen:
                return InjectivityProbe(False, (seen[target], atom))
            seen[target] = atom
        return InjectivityProbe(True)

    def inverse(self) -> 'Transformation':
        if not self.is_injective:
            raise PreconditionError("finite_map is not a bijection")
        return FiniteMap(self.space, {t: s for s, t in self.table.items()})

    @property
    def params(self) -> Dict[str, Any]:
        return {'table': {str(k): str(v) for k, v in self.table.items()}}


TRANSFORMATION_REGISTRY = {
    'identity': Identity,
    'shift_z': IntegerShift,
    'shift_n': NaturalShift,
    'finite_map': FiniteMap,
}


def get_transformation(kind: str) -> type:
    """
    Get transformation class by kind.

    Raises:
        ValidationError: If the kind is not in the catalog
    """
    if kind not in TRANSFORMATION_REGISTRY:
        raise ValidationError(
            f"Unknown transformation kind: {kind}. "
            f"Available kinds: {list(TRANSFORMATION_REGISTRY.keys())}"
        )
    return TRANSFORMATION_REGISTRY[kind]


def make_transformation(spec: Dict[str, Any], space: AtomicMeasureSpace) -> Transformation:
    """Build a transformation from ``{"kind": ..., **params}`` on a space."""
    cls = get_transformation(spec.get('kind'))
    params = {k: v for k, v in spec.items() if k != 'kind'}
    if cls is FiniteMap and 'table' in params:
        params['table'] = {
            space.coerce_atom(k): space.coerce_atom(v) for k, v in params['table'].items()
        }
    try:
        return cls(space, **params)
    except TypeError as e:
        raise ValidationError(f"Invalid parameters for {cls.kind}: {e}") from e


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def _check_power(n: int) -> None:
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")


def preimage_set(t: Transformation, subset: MeasurableSet, n: int) -> MeasurableSet:
    """τ^{-n}(A) = {i : τ^n(i) ∈ A}."""
    _check_power(n)
    return MeasurableSet(t.preimage_atoms(subset.atoms, n), subset.space)


def forward_image_set(t: Transformation, subset: MeasurableSet, n: int) -> MeasurableSet:
    """
    τ^n(A); a negative n means the preimage τ^{-|n|}(A).

    Raises:
        PreconditionError: If n > 0 and τ is not injective
    """
    if n < 0:
        return preimage_set(t, subset, -n)
    if n > 0 and not t.is_injective:
        raise PreconditionError(f"forward images need an injective transformation, got {t!r}")
    return MeasurableSet(t.image_atoms(subset.atoms, n), subset.space)


def iter_images(t: Transformation, subset: MeasurableSet, direction: str, horizon: int) -> Iterator[MeasurableSet]:
    """Yield τ^{∓n}(A) for n = 0..horizon, one step at a time."""
    if direction not in (PREIMAGE, FORWARD):
        raise ValidationError(f"Unknown direction: {direction}. Available: {[PREIMAGE, FORWARD]}")
    if direction == FORWARD and horizon > 0 and not t.is_injective:
        raise PreconditionError(f"forward images need an injective transformation, got {t!r}")
    current = subset
    yield current
    for _ in range(horizon):
        if direction == PREIMAGE:
            current = preimage_set(t, current, 1)
        else:
            current = forward_image_set(t, current, 1)
        yield current


def measure_sequence(t: Transformation, subset: MeasurableSet, direction: str, horizon: int) -> MeasureSequence:
    """
    μ(τ^{-n}(A)) (``preimage``) or μ(τ^n(A)) (``forward``) for n = 0..horizon.

    Raises:
        PreconditionError: If μ(A) = 0, or forward with a non-injective τ
    """
    _check_power(horizon)
    if subset.is_empty:
        raise PreconditionError("measure sequence needs 0 < μ(A)")
    images = list(iter_images(t, subset, direction, horizon))
    return MeasureSequence(
        direction=direction,
        base_set=subset,
        values=tuple(s.measure for s in images),
        null=tuple(s.is_empty for s in images),
    )


def injectivity_probe(t: Transformation, window: Optional[Iterable[Atom]] = None) -> InjectivityProbe:
    """Exact table check for finite maps; shifts and the identity are injective."""
    return t.injectivity_probe(window)


def nonsingularity_probe(t: Transformation) -> bool:
    """
    Always true here: every atom has positive mass, so the only null set is
    ∅, and the preimage of ∅ under a total map is ∅.
    """
    return all(t.space.mass(a) > 0 for a in t.space.labels) if t.space.domain == 'finite' else True


__all__ = [
    'PREIMAGE',
    'FORWARD',
    'InjectivityProbe',
    'MeasureSequence',
    'Transformation',
    'Identity',
    'IntegerShift',
    'NaturalShift',
    'FiniteMap',
    'TRANSFORMATION_REGISTRY',
    'get_transformation',
    'make_transformation',
    'preimage_set',
    'forward_image_set',
    'iter_images',
    'measure_sequence',
    'injectivity_probe',
    'nonsingularity_probe',
]
