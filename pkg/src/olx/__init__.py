"""
olx - Orlicz–Lorentz norms over atomic measure spaces, composition-operator
orbits and finite-horizon Li–Yorke criteria.

Example:
    >>> from olx import parse_scenario, run_command
    >>> scenario = parse_scenario('scenarios/s3_shift.json')
    >>> report = run_command('criteria', scenario, {'check': ['T23c']})
"""

__version__ = "0.1.0"

from .config import DEFAULT_CONFIG, load_config
from .core import RunReport, ScenarioRunner, run_command
from .criteria import CRITERION_REGISTRY, get_criterion
from .exceptions import (
    DomainError,
    InvariantError,
    OlxError,
    PreconditionError,
    ScenarioError,
    ValidationError,
)
from .gauges import ORLICZ_REGISTRY, WEIGHT_REGISTRY, get_orlicz_function, get_weight_function
from .measure import AtomicMeasureSpace, MeasurableSet, SimpleFunction
from .norms import NormContext, indicator_norm, luxemburg_norm, modular
from .scenario import Scenario, parse_scenario
from .transformations import TRANSFORMATION_REGISTRY, get_transformation

__all__ = [
    '__version__',
    'DEFAULT_CONFIG',
    'load_config',
    'RunReport',
    'ScenarioRunner',
    'run_command',
    'Scenario',
    'parse_scenario',
    'AtomicMeasureSpace',
    'MeasurableSet',
    'SimpleFunction',
    'NormContext',
    'modular',
    'luxemburg_norm',
    'indicator_norm',
    'ORLICZ_REGISTRY',
    'WEIGHT_REGISTRY',
    'TRANSFORMATION_REGISTRY',
    'CRITERION_REGISTRY',
    'get_orlicz_function',
    'get_weight_function',
    'get_transformation',
    'get_criterion',
    'OlxError',
    'ValidationError',
    'ScenarioError',
    'DomainError',
    'PreconditionError',
    'InvariantError',
]
