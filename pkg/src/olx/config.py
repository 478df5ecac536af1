"""
Run-time configuration for olx.

Defaults live in ``DEFAULT_CONFIG``; a YAML file and explicit overrides are
merged on top by ``load_config``.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from .exceptions import ValidationError

logger = logging.getLogger(__name__)


DEFAULT_CONFIG: Dict[str, Any] = {
    # finite-horizon surrogates
    'horizon': 10000,
    'orbit_horizon': 300,
    'threshold': 1e6,
    'eps_low': 1e-6,
    'semi_fraction': 0.1,
    'm_high_irr': 1e6,
    'delta': 1e-9,
    # search and scans
    'search_budget': 32,
    'block_base': 4,
    'pair_cap': 10 ** 6,
    'ratio_window': 25,
    'lemma_trials': 200,
    # root finding
    'luxemburg_rtol': 1e-12,
    'inverse_rtol': 1e-12,
    'max_iterations': 200,
    # output
    'progress': False,
}


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Build a configuration dictionary.

    Args:
        path: Optional YAML file whose top-level mapping overrides defaults
        overrides: Explicit values applied last (``None`` values are ignored)

    Returns:
        New dictionary with every key of ``DEFAULT_CONFIG``

    Raises:
        ValidationError: If the file is not a mapping or names unknown keys
    """
    config = dict(DEFAULT_CONFIG)

    if path is not None:
        try:
            with open(path, 'r') as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ValidationError(f"Cannot load config file {path}: {e}") from e
        if not isinstance(data, dict):
            raise ValidationError(f"Config file {path} must contain a mapping")
        _merge(config, data, source=str(path))
        logger.info("Loaded configuration from %s", path)

    if overrides:
        _merge(config, {k: v for k, v in overrides.items() if v is not None}, source='overrides')

    return config


def _merge(config: Dict[str, Any], data: Dict[str, Any], source: str) -> None:
    unknown = sorted(set(data) - set(DEFAULT_CONFIG))
    if unknown:
        raise ValidationError(
            f"Unknown config keys in {source}: {unknown}. "
            f"Available keys: {sorted(DEFAULT_CONFIG)}"
        )
    config.update(data)


__all__ = ['DEFAULT_CONFIG', 'load_config']
