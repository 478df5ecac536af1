"""
Scenario files: one measure space, gauge pair and transformation together
with named sets, set families and vectors.

Scenarios are JSON (or YAML, by file extension). Every schema violation is
raised as ``ScenarioError`` carrying the dotted path of the offending field.
"""

import copy
import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import yaml

from .config import DEFAULT_CONFIG
from .criteria import SetFamily
from .exceptions import OlxError, ScenarioError
from .gauges import OrliczFunction, WeightFunction, make_orlicz_function, make_weight_function
from .measure import AtomicMeasureSpace, MeasurableSet, SimpleFunction, make_atom_measure
from .norms import NormContext
from .simulators import construct_block_vector
from .transformations import Transformation, make_transformation

logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ('space', 'phi', 'weight', 'tau')


@dataclass
class Scenario:
    """A validated scenario."""

    name: str
    space: AtomicMeasureSpace
    phi: OrliczFunction
    weight: WeightFunction
    tau: Transformation
    sets: Dict[str, MeasurableSet] = field(default_factory=dict)
    families: Dict[str, SetFamily] = field(default_factory=dict)
    vectors: Dict[str, SimpleFunction] = field(default_factory=dict)
    defaults: Dict[str, Any] = field(default_factory=dict)
    source: Dict[str, Any] = field(default_factory=dict)

    @property
    def digest(self) -> str:
        """sha256 of the canonical JSON form of the source document."""
        canonical = json.dumps(self.source, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    def context(self, config: Optional[Mapping[str, Any]] = None) -> NormContext:
        """Norm context with the root-finding settings of ``config``."""
        config = dict(DEFAULT_CONFIG, **(config or {}))
        # the parsed φ is shared, so settings go on a copy
        phi = copy.copy(self.phi)
        phi.inverse_rtol = config['inverse_rtol']
        phi.max_iterations = config['max_iterations']
        return NormContext(
            phi=phi,
            weight=self.weight,
            space=self.space,
            rtol=config['luxemburg_rtol'],
            max_iterations=config['max_iterations'],
        )

    def get_set(self, name: str) -> MeasurableSet:
        if name not in self.sets:
            raise ScenarioError(f"unknown set {name!r}; available: {sorted(self.sets)}", path='sets')
        return self.sets[name]

    def get_vector(self, name: str) -> SimpleFunction:
        if name not in self.vectors:
            raise ScenarioError(f"unknown vector {name!r}; available: {sorted(self.vectors)}", path='vectors')
        return self.vectors[name]

    def get_family(self, name: str) -> SetFamily:
        if name not in self.families:
            raise ScenarioError(f"unknown family {name!r}; available: {sorted(self.families)}", path='families')
        return self.families[name]

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.source)


def _at(path: str, build, *args, **kwargs):
    try:
        return build(*args, **kwargs)
    except ScenarioError:
        raise
    except OlxError as e:
        raise ScenarioError(str(e), path=path) from e
    except (TypeError, ValueError) as e:
        # raw conversions inside catalog constructors, e.g. float('x')
        raise ScenarioError(str(e), path=path) from e


def _mapping(data: Any, path: str) -> Dict[str, Any]:
    if not isinstance(data, dict):
        raise ScenarioError(f"expected an object, got {type(data).__name__}", path=path)
    return data


def _int(data: Dict[str, Any], key: str, default: int, path: str) -> int:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"expected an integer, got {value!r}", path=f"{path}.{key}")
    if isinstance(value, float) and not value.is_integer():
        raise ScenarioError(f"expected an integer, got {value!r}", path=f"{path}.{key}")
    return int(value)


def _kind_spec(data: Any, path: str) -> Dict[str, Any]:
    data = _mapping(data, path)
    if 'kind' not in data:
        raise ScenarioError("missing required field", path=f"{path}.kind")
    return data


def _parse_space(data: Any) -> AtomicMeasureSpace:
    data = _mapping(data, 'space')
    domain = data.get('domain')
    if domain is None:
        raise ScenarioError("missing required field", path='space.domain')
    weights = _kind_spec(data.get('weights'), 'space.weights')
    measure = _at('space.weights', make_atom_measure, weights)
    labels = tuple(data.get('atoms', ()))
    if domain == 'finite' and not labels and 'size' in data:
        labels = tuple(range(_int(data, 'size', 0, 'space')))
    return _at('space', AtomicMeasureSpace, domain, measure, labels)


def _parse_atoms(space: AtomicMeasureSpace, raw: Any, path: str) -> List[Any]:
    if not isinstance(raw, list):
        raise ScenarioError("expected a list of atoms", path=path)
    return [_at(f"{path}[{i}]", space.coerce_atom, a) for i, a in enumerate(raw)]


def _parse_sets(space: AtomicMeasureSpace, data: Any) -> Dict[str, MeasurableSet]:
    sets = {}
    for name, raw in _mapping(data, 'sets').items():
        sets[name] = MeasurableSet.of(space, _parse_atoms(space, raw, f"sets.{name}"))
    return sets


def _parse_subsequence(raw: Any, path: str) -> Optional[List[int]]:
    if raw is None or isinstance(raw, list):
        return raw
    raw = _mapping(raw, path)
    if len(raw) != 1:
        raise ScenarioError("expected exactly one of 'arithmetic' or 'geometric'", path=path)
    kind, params = next(iter(raw.items()))
    params = _mapping(params, f"{path}.{kind}")
    count = _int(params, 'count', 0, f"{path}.{kind}")
    start = _int(params, 'start', 1, f"{path}.{kind}")
    if kind == 'arithmetic':
        step = _int(params, 'step', 1, f"{path}.{kind}")
        return [start + k * step for k in range(count)]
    if kind == 'geometric':
        ratio = _int(params, 'ratio', 2, f"{path}.{kind}")
        return [start * ratio ** k for k in range(count)]
    raise ScenarioError(f"unknown subsequence generator {kind!r}", path=path)


def _parse_families(space: AtomicMeasureSpace, sets: Dict[str, MeasurableSet], data: Any) -> Dict[str, SetFamily]:
    families = {}
    for name, raw in _mapping(data, 'families').items():
        path = f"families.{name}"
        raw = _mapping(raw, path)
        members = raw.get('sets')
        if not isinstance(members, list):
            raise ScenarioError("expected a list of set names or atom lists", path=f"{path}.sets")
        family_sets = []
        for i, member in enumerate(members):
            if isinstance(member, str):
                if member not in sets:
                    raise ScenarioError(f"unknown set {member!r}", path=f"{path}.sets[{i}]")
                family_sets.append(sets[member])
            else:
                family_sets.append(MeasurableSet.of(space, _parse_atoms(space, member, f"{path}.sets[{i}]")))
        subsequence = _parse_subsequence(raw.get('subsequence'), f"{path}.subsequence")
        families[name] = _at(path, SetFamily, tuple(family_sets), None if subsequence is None else tuple(subsequence))
    return families


def _parse_vectors(space: AtomicMeasureSpace, data: Any) -> Dict[str, SimpleFunction]:
    vectors = {}
    for name, raw in _mapping(data, 'vectors').items():
        path = f"vectors.{name}"
        raw = _mapping(raw, path)
        if 'blocks' in raw:
            peaks = []
            for i, block in enumerate(raw['blocks']):
                if not isinstance(block, list) or len(block) != 2:
                    raise ScenarioError("expected [position, coefficient]", path=f"{path}.blocks[{i}]")
                peaks.append((_at(f"{path}.blocks[{i}]", space.coerce_atom, block[0]), block[1]))
            vectors[name] = _at(path, construct_block_vector, space, peaks)
        elif 'values' in raw:
            values = {
                _at(f"{path}.values.{k}", space.coerce_atom, k): v
                for k, v in _mapping(raw['values'], f"{path}.values").items()
            }
            vectors[name] = _at(path, SimpleFunction, values, space)
        else:
            raise ScenarioError("expected 'blocks' or 'values'", path=path)
    return vectors


def _parse_defaults(data: Any) -> Dict[str, Any]:
    defaults = _mapping(data, 'defaults')
    for key in defaults:
        if key not in DEFAULT_CONFIG:
            raise ScenarioError(f"unknown setting; available: {sorted(DEFAULT_CONFIG)}", path=f"defaults.{key}")
    return dict(defaults)


def scenario_from_dict(data: Any, name: Optional[str] = None) -> Scenario:
    """
    Validate a scenario document.

    Raises:
        ScenarioError: On any schema violation, naming the field path
    """
    data = _mapping(data, '<root>')
    for key in REQUIRED_FIELDS:
        if key not in data:
            raise ScenarioError("missing required field", path=key)

    space = _parse_space(data['space'])
    phi = _at('phi', make_orlicz_function, _kind_spec(data['phi'], 'phi'))
    weight = _at('weight', make_weight_function, _kind_spec(data['weight'], 'weight'))
    tau = _at('tau', make_transformation, _kind_spec(data['tau'], 'tau'), space)
    sets = _parse_sets(space, data.get('sets', {}))

    return Scenario(
        name=data.get('name') or name or 'scenario',
        space=space,
        phi=phi,
        weight=weight,
        tau=tau,
        sets=sets,
        families=_parse_families(space, sets, data.get('families', {})),
        vectors=_parse_vectors(space, data.get('vectors', {})),
        defaults=_parse_defaults(data.get('defaults', {})),
        source=data,
    )


def parse_scenario(path: Union[str, Path]) -> Scenario:
    """
    Load and validate a scenario file (``.json``, ``.yaml`` or ``.yml``).

    Raises:
        ScenarioError: If the file cannot be read or violates the schema
    """
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise ScenarioError(f"cannot read scenario file {path}: {e}") from e

    try:
        if path.suffix in ('.yaml', '.yml'):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ScenarioError(f"malformed scenario file {path}: {e}") from e

    scenario = scenario_from_dict(data, name=path.stem)
    logger.info("Loaded scenario %s from %s", scenario.name, path)
    return scenario


__all__ = ['Scenario', 'scenario_from_dict', 'parse_scenario']
