"""
Report emission for olx: JSON payloads, CSV traces and a plain-text summary.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Optional, TextIO, Union

import pandas as pd

from ..exceptions import ValidationError

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = '%.17g'


def _finite_safe(data: Any) -> Any:
    """Replace non-finite floats by the strings ``"inf"``, ``"-inf"`` and ``"nan"``."""
    if isinstance(data, float):
        if math.isnan(data):
            return 'nan'
        if math.isinf(data):
            return 'inf' if data > 0 else '-inf'
        return data
    if isinstance(data, dict):
        return {k: _finite_safe(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [_finite_safe(v) for v in data]
    return data


def dumps_json(data: Dict[str, Any]) -> str:
    """
    Canonical JSON text: sorted keys, two-space indent, trailing newline.

    Non-finite floats are written as strings so the output is strict JSON.
    """
    return json.dumps(_finite_safe(data), indent=2, sort_keys=True, allow_nan=False) + '\n'


def write_json(data: Dict[str, Any], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_json(data), encoding='utf-8')
    logger.info("Wrote JSON report to %s", path)
    return path


def dumps_csv(frame: pd.DataFrame) -> str:
    """CSV text with floats at 17 significant digits, so values round-trip."""
    return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator='\n')


def write_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_csv(frame), encoding='utf-8')
    logger.info("Wrote CSV trace with %d rows to %s", len(frame), path)
    return path


def render_summary(report) -> str:
    """Human-readable summary of a ``RunReport``."""
    lines = [
        f"olx {report.version}  {report.command} on {report.scenario}",
        f"  digest     {report.digest[:16]}",
        f"  wall clock {report.wall_clock:.3f}s",
    ]
    results = report.results
    if report.command == 'norm':
        lines.append(f"  target     {results['target']}")
        lines.append(f"  norm       {results['norm']:.17g}")
        lines.append(f"  modular    {results['modular_at_norm']:.17g}")
        lines.append(f"  bracket    {results['bracket_width']:.3g}")
    elif report.command == 'orbit':
        lines.append(f"  target     {results['target']}")
        lines.append(f"  horizon    {results['horizon']}")
        lines.append(f"  min        {results['min_value']:.6g} at n={results['min_index']}")
        lines.append(f"  max        {results['max_value']:.6g} at n={results['max_index']}")
        lines.append(f"  verdict    {results['classification']}")
    elif report.command == 'criteria':
        for r in results:
            if 'status' not in r:
                lines.append(
                    f"  {r['criterion']:<6} forward={r['forward_holds']} converse={r['converse_holds']}"
                    f" over {r['trials']} trials"
                )
                continue
            witness = r.get('witness')
            at = f" n={witness['n']} value={witness['value']:.6g}" if witness else ''
            lines.append(f"  {r['criterion']:<6} {r['status']}{at}")
    elif report.command == 'crosscheck':
        for row in results['rows']:
            mark = {True: 'agree', False: 'DISAGREE', None: '-'}[row['agrees']]
            lines.append(f"  ({row['condition']}) {row['check']:<16} {row['status']:<24} {mark}")
        flags = ', '.join(f"{k}={v}" for k, v in sorted(results['flags'].items()))
        lines.append(f"  flags      {flags}")
    return '\n'.join(lines) + '\n'


def emit(report, fmt: str = 'json', out: Optional[Union[str, Path]] = None, stream: Optional[TextIO] = None) -> str:
    """
    Write a report as JSON or CSV to ``out``, or return the text for stdout.

    CSV needs a tabular result (orbit, criteria, crosscheck).
    """
    if fmt == 'csv':
        if report.frame is None:
            raise ValidationError(f"the {report.command} command has no CSV form")
        text = dumps_csv(report.frame)
        if out is not None:
            write_csv(report.frame, out)
    elif fmt == 'json':
        text = dumps_json(report.to_dict())
        if out is not None:
            write_json(report.to_dict(), out)
    else:
        raise ValidationError(f"Unknown format: {fmt}. Available formats: ['json', 'csv']")

    if stream is not None:
        stream.write(text)
    return text


__all__ = [
    'CSV_FLOAT_FORMAT',
    'dumps_json',
    'write_json',
    'dumps_csv',
    'write_csv',
    'render_summary',
    'emit',
]
