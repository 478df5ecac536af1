"""
Run engine for olx: dispatches the norm, orbit, criteria and crosscheck
commands over a scenario and collects the results in a ``RunReport``.
"""

import json
import logging
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd

from . import __version__
from .config import load_config
from .criteria import (
    CRITERION_REGISTRY,
    ConsistencyMatrix,
    CriterionVerdict,
    SetFamily,
    consistency_matrix,
    get_criterion,
)
from .exceptions import PreconditionError, ScenarioError, ValidationError
from .measure import SimpleFunction
from .norms import intersection_norm, luxemburg_bracket, modular, sup_norm
from .reports import dumps_json
from .scenario import Scenario
from .simulators import OrbitReport, orbit_norms

logger = logging.getLogger(__name__)

SET_CHECKS = ('T23c', 'T23d', 'T23e', 'T23f', 'T21', 'T22')


@dataclass
class RunReport:
    """
    Container for the outcome of one command on one scenario.

    ``wall_clock`` is kept out of ``to_dict`` so identical runs serialize
    to identical bytes.
    """

    command: str
    scenario: str
    digest: str
    settings: Dict[str, Any] = field(default_factory=dict)
    results: Any = None
    version: str = __version__
    wall_clock: float = 0.0
    frame: Optional[pd.DataFrame] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> Dict:
        """Convert the report to a JSON-ready dictionary."""
        return {
            'command': self.command,
            'scenario': self.scenario,
            'digest': self.digest,
            'version': self.version,
            'settings': self.settings,
            'results': self.results,
        }

    def save(self, filepath: Union[str, Path]) -> None:
        """Save the report to a JSON file."""
        filepath = Path(filepath)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        filepath.write_text(dumps_json(self.to_dict()), encoding='utf-8')

    @classmethod
    def load(cls, filepath: Union[str, Path]) -> 'RunReport':
        """Load a report from a JSON file."""
        with open(filepath, 'r') as f:
            data = json.load(f)
        return cls(**data)


class ScenarioRunner:
    """
    Runs commands over one scenario.

    Settings are resolved once: explicit overrides (CLI flags) over the
    scenario ``defaults`` block over the config file over the built-in
    defaults.

    Example:
        >>> runner = ScenarioRunner(parse_scenario('scenarios/s3_shift.json'))
        >>> report = runner.run('criteria', check=['T23c'])
        >>> report.results[0]['witness']
        {'n': 20, 'value': 1048576.0}
    """

    COMMANDS = ('norm', 'orbit', 'criteria', 'crosscheck')

    def __init__(
        self,
        scenario: Scenario,
        overrides: Optional[Dict[str, Any]] = None,
        config_path: Optional[Union[str, Path]] = None,
    ):
        """
        Args:
            scenario: Validated scenario
            overrides: Settings that win over everything else (None values ignored)
            config_path: Optional YAML config file
        """
        self.scenario = scenario
        merged = dict(scenario.defaults)
        merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
        self.config = load_config(config_path, merged)
        self.ctx = scenario.context(self.config)

    def run(self, command: str, **options) -> RunReport:
        """
        Run one command.

        Args:
            command: One of ``norm``, ``orbit``, ``criteria``, ``crosscheck``
            **options: ``set``, ``vector``, ``family``, ``check`` (list)

        Returns:
            RunReport
        """
        if command not in self.COMMANDS:
            raise ValidationError(f"Unknown command: {command}. Available commands: {list(self.COMMANDS)}")
        logger.info("Running %s on scenario %s", command, self.scenario.name)
        start = time.perf_counter()
        results, settings, frame = getattr(self, f"_run_{command}")(**options)
        report = RunReport(
            command=command,
            scenario=self.scenario.name,
            digest=self.scenario.digest,
            settings=settings,
            results=results,
            frame=frame,
        )
        report.wall_clock = time.perf_counter() - start
        logger.info("Finished %s in %.3fs", command, report.wall_clock)
        return report

    # ------------------------------------------------------------------
    # target selection
    # ------------------------------------------------------------------

    def _target(self, set: Optional[str] = None, vector: Optional[str] = None):
        if set is not None and vector is not None:
            raise ValidationError("give either a set or a vector, not both")
        if vector is not None:
            return f"vector:{vector}", self.scenario.get_vector(vector)
        if set is not None:
            return f"set:{set}", SimpleFunction.indicator(self.scenario.get_set(set))
        if self.scenario.vectors:
            name = next(iter(self.scenario.vectors))
            return f"vector:{name}", self.scenario.vectors[name]
        if self.scenario.sets:
            name = next(iter(self.scenario.sets))
            return f"set:{name}", SimpleFunction.indicator(self.scenario.sets[name])
        raise ScenarioError("scenario has neither sets nor vectors", path='sets')

    def _subset(self, set: Optional[str] = None):
        if set is not None:
            return set, self.scenario.get_set(set)
        if not self.scenario.sets:
            raise ScenarioError("scenario has no sets", path='sets')
        name = next(iter(self.scenario.sets))
        return name, self.scenario.sets[name]

    def _family(self, family: Optional[str], subset) -> SetFamily:
        if family is not None:
            return self.scenario.get_family(family)
        if self.scenario.families:
            return next(iter(self.scenario.families.values()))
        return SetFamily((subset,))

    def _pick(self, *keys: str) -> Dict[str, Any]:
        return {k: self.config[k] for k in keys}

    # ------------------------------------------------------------------
    # commands
    # ------------------------------------------------------------------

    def _run_norm(self, set: Optional[str] = None, vector: Optional[str] = None, **_):
        label, g = self._target(set, vector)
        norm, width = luxemburg_bracket(self.ctx, g)
        results = {
            'target': label,
            'norm': norm,
            'modular_at_norm': modular(self.ctx, g.scaled(1.0 / norm)) if norm > 0 else 0.0,
            'bracket_width': width,
            'sup_norm': sup_norm(g),
            'is_orlicz_space': self.ctx.is_orlicz_space,
            'is_lorentz_space': self.ctx.is_lorentz_space,
        }
        if self.ctx.weight.is_constant:
            results['intersection_norm'] = intersection_norm(self.ctx, g)
        return results, self._pick('luxemburg_rtol', 'inverse_rtol'), None

    def _run_orbit(self, set: Optional[str] = None, vector: Optional[str] = None, **_):
        label, g = self._target(set, vector)
        horizon = self.config['orbit_horizon']
        report = self._orbit(g, horizon)
        results = {'target': label, **report.summary()}
        settings = {'horizon': horizon, **self._pick('eps_low', 'semi_fraction', 'm_high_irr')}
        return results, settings, report.to_frame()

    def _orbit(self, g: SimpleFunction, horizon: int) -> OrbitReport:
        report = orbit_norms(
            self.ctx, self.scenario.tau, g, horizon,
            eps_low=self.config['eps_low'],
            semi_fraction=self.config['semi_fraction'],
            m_high_irr=self.config['m_high_irr'],
            progress=self.config['progress'],
        )
        if self.ctx.weight.is_constant:
            both = tuple(max(a, b) for a, b in zip(report.norms, report.sup_norms))
            report = replace(report, intersection_norms=both)
        return report

    def _run_criteria(
        self,
        set: Optional[str] = None,
        family: Optional[str] = None,
        check: Optional[Sequence[str]] = None,
        **_,
    ):
        name, subset = self._subset(set)
        explicit = bool(check)
        checks = list(check) if check else list(SET_CHECKS)
        if not explicit and self.ctx.phi.delta2_constant is not None:
            checks.append('L1')

        results: List[Dict[str, Any]] = []
        for check_id in checks:
            criterion = get_criterion(check_id)(**self.config)
            try:
                outcomes = criterion.evaluate(
                    self.ctx, self.scenario.tau, subset,
                    family=self._family(family, subset) if check_id == 'T21' else None,
                )
            except PreconditionError as e:
                if explicit:
                    raise
                logger.warning("Skipping %s: %s", check_id, e)
                results.append({'criterion': check_id, 'status': 'NotApplicable', 'reason': str(e)})
                continue
            for outcome in outcomes:
                if isinstance(outcome, CriterionVerdict):
                    logger.info(criterion.interpret(outcome))
                results.append(outcome.to_dict())

        settings = {'set': name, **self._pick('horizon', 'threshold', 'delta', 'ratio_window', 'pair_cap')}
        return results, settings, pd.DataFrame([_flatten(r) for r in results])

    def _run_crosscheck(self, set: Optional[str] = None, **_):
        name, subset = self._subset(set)
        matrix: ConsistencyMatrix = consistency_matrix(
            self.ctx, self.scenario.tau, subset,
            horizon=self.config['horizon'],
            threshold=self.config['threshold'],
            orbit_horizon=self.config['orbit_horizon'],
            delta=self.config['delta'],
            candidate_sets=list(self.scenario.sets.values()),
            vectors=list(self.scenario.vectors.values()),
            search_budget=self.config['search_budget'],
            block_base=self.config['block_base'],
            eps_low=self.config['eps_low'],
            semi_fraction=self.config['semi_fraction'],
            m_high_irr=self.config['m_high_irr'],
        )
        settings = {
            'set': name,
            **self._pick('horizon', 'orbit_horizon', 'threshold', 'delta', 'eps_low', 'search_budget'),
        }
        return matrix.to_dict(), settings, matrix.to_frame()


def _flatten(result: Dict[str, Any]) -> Dict[str, Any]:
    witness = result.get('witness') or {}
    return {
        'criterion': result.get('criterion'),
        'status': result.get('status'),
        'witness_n': witness.get('n'),
        'witness_value': witness.get('value'),
    }


def run_command(
    command: str,
    scenario: Scenario,
    flags: Optional[Dict[str, Any]] = None,
    config_path: Optional[Union[str, Path]] = None,
) -> RunReport:
    """
    Run one command over a scenario.

    Args:
        command: ``norm``, ``orbit``, ``criteria`` or ``crosscheck``
        scenario: Validated scenario
        flags: Setting overrides plus the ``set``, ``vector``, ``family``
            and ``check`` selectors
        config_path: Optional YAML config file
    """
    flags = dict(flags or {})
    if command == 'orbit' and flags.get('horizon') is not None:
        # the orbit command's horizon is the orbit-side one
        flags['orbit_horizon'] = flags.pop('horizon')
    options = {k: flags.pop(k, None) for k in ('set', 'vector', 'family', 'check')}
    runner = ScenarioRunner(scenario, flags, config_path)
    return runner.run(command, **options)


__all__ = ['RunReport', 'ScenarioRunner', 'run_command', 'SET_CHECKS', 'CRITERION_REGISTRY']
