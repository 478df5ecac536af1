"""
Atomic measure spaces, measurable sets, simple functions and the
non-increasing rearrangement.

A space is an index domain (``finite``, ``naturals`` = {0, 1, ...} or
``integers``) together with an atom measure assigning a strictly positive
mass to every atom. Functions are finitely supported, so every integral
below is a finite sum.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exceptions import DomainError, ValidationError

logger = logging.getLogger(__name__)

Atom = Hashable

DOMAINS = ('finite', 'naturals', 'integers')


# ---------------------------------------------------------------------------
# Atom measures
# ---------------------------------------------------------------------------

class AtomMeasure(ABC):
    """Assigns a mass μ_i > 0 to every atom of a domain."""

    kind: str = ''

    #: domains this measure can be attached to
    domains: Tuple[str, ...] = DOMAINS

    @abstractmethod
    def mass(self, atom: Atom) -> float:
        pass

    @abstractmethod
    def total(self, space: 'AtomicMeasureSpace') -> float:
        """μ(X) for the given space (may be +inf)."""
        pass

    @property
    @abstractmethod
    def params(self) -> Dict[str, Any]:
        pass

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, **self.params}

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(self.kind)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.params!r})"


class ExplicitMeasure(AtomMeasure):
    """Explicit masses for a finite domain, given in label order or by label."""

    kind = 'explicit'
    domains = ('finite',)

    def __init__(self, masses: Any):
        if isinstance(masses, Mapping):
            self.masses = {k: float(v) for k, v in masses.items()}
            self._ordered = None
        else:
            self._ordered = [float(v) for v in masses]
            self.masses = None
        values = self._ordered if self._ordered is not None else list(self.masses.values())
        if any(not v > 0 or math.isinf(v) for v in values):
            raise ValidationError(f"explicit measure: masses must be finite and > 0, got {values}")

    def bind(self, labels: Sequence[Atom]) -> None:
        """Attach positional masses to atom labels."""
        if self._ordered is not None:
            if len(self._ordered) != len(labels):
                raise ValidationError(
                    f"explicit measure: {len(self._ordered)} masses for {len(labels)} atoms"
                )
            self.masses = dict(zip(labels, self._ordered))
        elif set(self.masses) != set(labels):
            raise ValidationError("explicit measure: mass labels must match the atom labels")

    def mass(self, atom: Atom) -> float:
        return self.masses[atom]

    def total(self, space: 'AtomicMeasureSpace') -> float:
        return math.fsum(self.masses.values())

    @property
    def params(self) -> Dict[str, Any]:
        if self._ordered is not None:
            return {'masses': list(self._ordered)}
        return {'masses': {str(k): v for k, v in self.masses.items()}}


class _RatioMeasure(AtomMeasure):

    def __init__(self, ratio: float = 0.5, scale: float = 1.0):
        ratio, scale = float(ratio), float(scale)
        if not 0 < ratio < 1:
            raise ValidationError(f"{self.kind} measure: ratio must lie in (0, 1), got {ratio}")
        if not scale > 0 or math.isinf(scale):
            raise ValidationError(f"{self.kind} measure: scale must be finite and > 0, got {scale}")
        self.ratio = ratio
        self.scale = scale

    @property
    def params(self) -> Dict[str, Any]:
        return {'ratio': self.ratio, 'scale': self.scale}


class GeometricMeasure(_RatioMeasure):
    """μ_i = scale·ratio^i on ℕ."""

    kind = 'geometric'
    domains = ('naturals',)

    def mass(self, atom: Atom) -> float:
        return self.scale * self.ratio ** atom

    def total(self, space: 'AtomicMeasureSpace') -> float:
        return self.scale / (1.0 - self.ratio)


class SymmetricGeometricMeasure(_RatioMeasure):
    """μ_i = scale·ratio^|i| on ℤ."""

    kind = 'sym_geometric'
    domains = ('integers',)

    def mass(self, atom: Atom) -> float:
        return self.scale * self.ratio ** abs(atom)

    def total(self, space: 'AtomicMeasureSpace') -> float:
        return self.scale * (1.0 + self.ratio) / (1.0 - self.ratio)


class ConstantMeasure(AtomMeasure):
    """μ_i = c on every atom; c = 1 is the counting measure."""

    kind = 'constant'

    def __init__(self, c: float = 1.0):
        c = float(c)
        if not c > 0 or math.isinf(c):
            raise ValidationError(f"constant measure: c must be finite and > 0, got {c}")
        self.c = c

    def mass(self, atom: Atom) -> float:
        return self.c

    def total(self, space: 'AtomicMeasureSpace') -> float:
        if space.domain == 'finite':
            return self.c * len(space.labels)
        return math.inf

    @property
    def params(self) -> Dict[str, Any]:
        return {'c': self.c}


class TabulatedMeasure(AtomMeasure):
    """
    User table of masses with a default tail formula for every other atom.

    Args:
        table: Mapping atom -> mass (positive)
        default: Atom measure used off the table
    """

    kind = 'table'

    def __init__(self, table: Mapping[Atom, float], default: AtomMeasure):
        self.table = {k: float(v) for k, v in table.items()}
        if any(not v > 0 or math.isinf(v) for v in self.table.values()):
            raise ValidationError("table measure: masses must be finite and > 0")
        self.default = default
        self.domains = default.domains

    def mass(self, atom: Atom) -> float:
        if atom in self.table:
            return self.table[atom]
        return self.default.mass(atom)

    def total(self, space: 'AtomicMeasureSpace') -> float:
        base = self.default.total(space)
        if math.isinf(base):
            return base
        return math.fsum([base] + [v - self.default.mass(k) for k, v in self.table.items()])

    @property
    def params(self) -> Dict[str, Any]:
        return {
            'table': {str(k): v for k, v in self.table.items()},
            'default': self.default.to_dict(),
        }


ATOM_MEASURE_REGISTRY = {
    'explicit': ExplicitMeasure,
    'geometric': GeometricMeasure,
    'sym_geometric': SymmetricGeometricMeasure,
    'constant': ConstantMeasure,
    'table': TabulatedMeasure,
}


def get_atom_measure(kind: str) -> type:
    """
    Get atom measure class by kind.

    Raises:
        ValidationError: If the kind is not in the catalog
    """
    if kind not in ATOM_MEASURE_REGISTRY:
        raise ValidationError(
            f"Unknown atom measure kind: {kind}. "
            f"Available kinds: {list(ATOM_MEASURE_REGISTRY.keys())}"
        )
    return ATOM_MEASURE_REGISTRY[kind]


def _int_key(key: Any) -> Atom:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise ValidationError(f"table measure: atom {key!r} is not an integer")


def make_atom_measure(spec: Dict[str, Any]) -> AtomMeasure:
    """Build an atom measure from ``{"kind": ..., **params}``; ``table`` nests its default."""
    cls = get_atom_measure(spec.get('kind'))
    params = {k: v for k, v in spec.items() if k != 'kind'}
    if cls is TabulatedMeasure and isinstance(params.get('default'), Mapping):
        params['default'] = make_atom_measure(params['default'])
    if cls is TabulatedMeasure and isinstance(params.get('table'), Mapping):
        # JSON object keys arrive as strings
        params['table'] = {_int_key(k): v for k, v in params['table'].items()}
    try:
        return cls(**params)
    except TypeError as e:
        raise ValidationError(f"Invalid parameters for {cls.kind}: {e}") from e


# ---------------------------------------------------------------------------
# Spaces, sets and functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AtomicMeasureSpace:
    """
    σ-finite atomic measure space.

    Args:
        domain: One of ``finite``, ``naturals``, ``integers``
        measure: Atom measure assigning positive masses
        labels: Atom labels (finite domains only)
    """

    domain: str
    measure: AtomMeasure
    labels: Tuple[Atom, ...] = ()

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValidationError(f"Unknown domain: {self.domain}. Available domains: {list(DOMAINS)}")
        if self.domain not in self.measure.domains:
            raise ValidationError(
                f"{self.measure.kind} measure cannot be used on the {self.domain} domain"
            )
        if self.domain == 'finite':
            labels = tuple(self.labels)
            if not labels or len(set(labels)) != len(labels):
                raise ValidationError("finite domain needs non-empty, distinct atom labels")
            object.__setattr__(self, 'labels', labels)
            if isinstance(self.measure, ExplicitMeasure):
                self.measure.bind(labels)
            for atom in labels:
                m = self.measure.mass(atom)
                if not m > 0:
                    raise ValidationError(f"atom {atom!r} has non-positive mass {m}")
        elif self.labels:
            raise ValidationError(f"labels are only allowed on finite domains")

    @classmethod
    def finite(cls, masses: Any, labels: Optional[Sequence[Atom]] = None) -> 'AtomicMeasureSpace':
        """Finite space from explicit masses (a list, or a mapping label -> mass)."""
        if labels is None:
            labels = list(masses.keys()) if isinstance(masses, Mapping) else list(range(len(masses)))
        return cls('finite', ExplicitMeasure(masses), tuple(labels))

    def contains(self, atom: Atom) -> bool:
        if self.domain == 'finite':
            return atom in self.labels
        if isinstance(atom, bool) or not isinstance(atom, (int, np.integer)):
            return False
        return self.domain == 'integers' or atom >= 0

    def coerce_atom(self, raw: Any) -> Atom:
        """Turn a JSON atom reference into an atom of this space."""
        if self.domain == 'finite':
            for label in self.labels:
                if label == raw or str(label) == str(raw):
                    return label
            raise ValidationError(f"atom {raw!r} is not in the finite domain")
        try:
            atom = int(raw)
        except (TypeError, ValueError):
            raise ValidationError(f"atom {raw!r} is not an integer")
        if not self.contains(atom):
            raise ValidationError(f"atom {atom} is not in the {self.domain} domain")
        return atom

    def mass(self, atom: Atom) -> float:
        return self.measure.mass(atom)

    def measure_of(self, atoms: Iterable[Atom]) -> float:
        """Exact (correctly rounded) Σ μ_i over the given atoms."""
        return math.fsum(self.measure.mass(a) for a in atoms)

    def total_measure(self) -> float:
        return self.measure.total(self)

    @property
    def has_finite_measure(self) -> bool:
        return not math.isinf(self.total_measure())

    def to_dict(self) -> Dict[str, Any]:
        data = {'domain': self.domain, 'weights': self.measure.to_dict()}
        if self.domain == 'finite':
            data['atoms'] = [str(a) for a in self.labels]
        return data

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AtomicMeasureSpace):
            return NotImplemented
        return (self.domain, self.labels, self.measure) == (other.domain, other.labels, other.measure)

    def __hash__(self) -> int:
        return hash((self.domain, self.labels))


def _sorted_atoms(atoms: Iterable[Atom]) -> List[Atom]:
    try:
        return sorted(atoms)
    except TypeError:
        return sorted(atoms, key=repr)


@dataclass(frozen=True)
class MeasurableSet:
    """Finite set of atoms of a space."""

    atoms: FrozenSet[Atom]
    space: AtomicMeasureSpace = field(compare=False)

    def __post_init__(self):
        atoms = frozenset(self.atoms)
        object.__setattr__(self, 'atoms', atoms)
        outside = [a for a in atoms if not self.space.contains(a)]
        if outside:
            raise ValidationError(f"atoms {outside} are outside the {self.space.domain} domain")

    @classmethod
    def of(cls, space: AtomicMeasureSpace, atoms: Iterable[Atom] = ()) -> 'MeasurableSet':
        return cls(frozenset(atoms), space)

    @property
    def measure(self) -> float:
        return measure_of(self)

    @property
    def is_empty(self) -> bool:
        return not self.atoms

    def sorted_atoms(self) -> List[Atom]:
        return _sorted_atoms(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.sorted_atoms())

    def __contains__(self, atom: Atom) -> bool:
        return atom in self.atoms


@dataclass(frozen=True, eq=False)
class SimpleFunction:
    """
    Finitely supported real function, stored as atom -> nonzero value.

    Zero values are dropped at construction.
    """

    values: Mapping[Atom, float]
    space: AtomicMeasureSpace

    def __post_init__(self):
        clean = {}
        for atom, value in self.values.items():
            value = float(value)
            if not math.isfinite(value):
                raise ValidationError(f"value at atom {atom!r} must be finite, got {value}")
            if value != 0.0:
                clean[atom] = value
        outside = [a for a in clean if not self.space.contains(a)]
        if outside:
            raise ValidationError(f"atoms {outside} are outside the {self.space.domain} domain")
        object.__setattr__(self, 'values', clean)

    @classmethod
    def zero(cls, space: AtomicMeasureSpace) -> 'SimpleFunction':
        return cls({}, space)

    @classmethod
    def indicator(cls, subset: MeasurableSet, c: float = 1.0) -> 'SimpleFunction':
        """c·χ_A."""
        return cls({a: c for a in subset.atoms}, subset.space)

    @property
    def support(self) -> MeasurableSet:
        return MeasurableSet(frozenset(self.values), self.space)

    @property
    def is_zero(self) -> bool:
        return not self.values

    def value(self, atom: Atom) -> float:
        return self.values.get(atom, 0.0)

    def scaled(self, c: float) -> 'SimpleFunction':
        return SimpleFunction({a: c * v for a, v in self.values.items()}, self.space)

    def __add__(self, other: 'SimpleFunction') -> 'SimpleFunction':
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        merged = dict(self.values)
        for atom, value in other.values.items():
            merged[atom] = merged.get(atom, 0.0) + value
        return SimpleFunction(merged, self.space)

    def __neg__(self) -> 'SimpleFunction':
        return self.scaled(-1.0)

    def __sub__(self, other: 'SimpleFunction') -> 'SimpleFunction':
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c: float) -> 'SimpleFunction':
        return self.scaled(float(c))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        return self.values == other.values and self.space == other.space

    def __hash__(self) -> int:
        return hash(frozenset(self.values.items()))

    def to_dict(self) -> Dict[str, float]:
        return {str(a): self.values[a] for a in _sorted_atoms(self.values)}

    def __repr__(self) -> str:
        return f"SimpleFunction({self.to_dict()!r})"


@dataclass(frozen=True)
class RearrangementProfile:
    """
    g* as an exact step function: ``values[j]`` on [M_{j-1}, M_j), M_{-1} = 0,
    and 0 beyond the last endpoint.
    """

    values: Tuple[float, ...] = ()
    endpoints: Tuple[float, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.values

    @property
    def length(self) -> float:
        return self.endpoints[-1] if self.endpoints else 0.0

    @property
    def steps(self) -> List[Tuple[float, float]]:
        return list(zip(self.values, self.endpoints))

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.values, dtype=float), np.asarray(self.endpoints, dtype=float)

    def __call__(self, t: float) -> float:
        """g*(t) for t ≥ 0."""
        if t < 0:
            raise DomainError(f"t must be non-negative, got {t}")
        j = int(np.searchsorted(self.endpoints, t, side='right'))
        return self.values[j] if j < len(self.values) else 0.0

    def superlevel_measure(self, lam: float) -> float:
        """Lebesgue measure of {t : g*(t) > λ}."""
        if lam < 0:
            raise DomainError(f"lambda must be non-negative, got {lam}")
        above = [m for v, m in zip(self.values, self.endpoints) if v > lam]
        return above[-1] if above else 0.0


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def measure_of(subset: MeasurableSet) -> float:
    """μ(A) = Σ_{i ∈ A} μ_i."""
    return subset.space.measure_of(subset.atoms)


def distribution_function(g: SimpleFunction, lam: float) -> float:
    """
    μ_g(λ) = μ{x : |g(x)| > λ}.

    Raises:
        DomainError: If λ is negative
    """
    if lam < 0:
        raise DomainError(f"lambda must be non-negative, got {lam}")
    return g.space.measure_of(a for a, v in g.values.items() if abs(v) > lam)


def rearrangement(g: SimpleFunction) -> RearrangementProfile:
    """
    Non-increasing rearrangement g*(t) = inf{λ > 0 : μ_g(λ) ≤ t}.

    Distinct |values| sorted descending; M_j is the measure of {|g| ≥ value_j}.
    """
    if g.is_zero:
        return RearrangementProfile()

    by_level: Dict[float, List[float]] = {}
    for atom, value in g.values.items():
        by_level.setdefault(abs(value), []).append(g.space.mass(atom))

    values, endpoints = [], []
    masses: List[float] = []
    for level in sorted(by_level, reverse=True):
        masses.extend(by_level[level])
        endpoint = math.fsum(masses)
        if endpoint == 0.0 or (endpoints and endpoint <= endpoints[-1]):
            # masses below the double range add no length
            logger.debug("Dropping zero-length rearrangement step at level %g", level)
            continue
        values.append(level)
        endpoints.append(endpoint)

    return RearrangementProfile(tuple(values), tuple(endpoints))


__all__ = [
    'Atom',
    'DOMAINS',
    'AtomMeasure',
    'ExplicitMeasure',
    'GeometricMeasure',
    'SymmetricGeometricMeasure',
    'ConstantMeasure',
    'TabulatedMeasure',
    'ATOM_MEASURE_REGISTRY',
    'get_atom_measure',
    'make_atom_measure',
    'AtomicMeasureSpace',
    'MeasurableSet',
    'SimpleFunction',
    'RearrangementProfile',
    'measure_of',
    'distribution_function',
    'rearrangement',
]
