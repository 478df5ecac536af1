"""
Command-line interface for olx.

    olx norm       --scenario s3.json --set A0
    olx orbit      --scenario s3.json --vector blocks1 --horizon 300 --out o.csv
    olx criteria   --scenario s3.json --check T23c --threshold 1e6
    olx crosscheck --scenario s3.json --out matrix.json
    olx batch      --command crosscheck --scenario a.json --scenario b.json --out reports/

Exit codes: 0 success, 2 scenario or validation error, 3 precondition or
domain error, 4 internal invariant breach.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from tqdm import tqdm

from . import __version__
from .core import SET_CHECKS, ScenarioRunner, run_command
from .criteria import CRITERION_REGISTRY
from .exceptions import EXIT_OK, OlxError, exit_code_for
from .reports import emit, render_summary
from .scenario import parse_scenario

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', help='YAML config file with default overrides')
    parser.add_argument('--horizon', type=int, help='horizon N (orbit command: orbit horizon)')
    parser.add_argument('--threshold', type=float, help='divergence threshold T')
    parser.add_argument('--eps-low', dest='eps_low', type=float, help='orbit low threshold')
    parser.add_argument('--delta', type=float, help='lim inf separation for T23f')
    parser.add_argument('--format', dest='fmt', choices=('json', 'csv'), default='json')
    parser.add_argument('--out', help='output file (default: stdout)')
    parser.add_argument('--progress', action='store_true', default=None, help='show progress bars')
    parser.add_argument('--log-level', default='WARNING', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))


def _add_selectors(parser: argparse.ArgumentParser, command: str) -> None:
    parser.add_argument('--set', help='named set of the scenario')
    if command in ('norm', 'orbit'):
        parser.add_argument('--vector', help='named vector of the scenario')
    if command == 'criteria':
        parser.add_argument('--family', help='named set family for T21')
        parser.add_argument(
            '--check', action='append', choices=sorted(CRITERION_REGISTRY),
            help=f"criterion to run; repeatable (default: {', '.join(SET_CHECKS)})",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='olx',
        description='Orlicz–Lorentz norms, composition-operator orbits and Li–Yorke criteria',
    )
    parser.add_argument('--version', action='version', version=f'olx {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    for command, help_text in (
        ('norm', 'Luxemburg norm of a set indicator or vector'),
        ('orbit', 'orbit norm trace of a set indicator or vector'),
        ('criteria', 'finite-horizon divergence criteria on a set'),
        ('crosscheck', 'consistency matrix of criteria against orbit dynamics'),
    ):
        p = sub.add_parser(command, help=help_text)
        p.add_argument('--scenario', required=True, help='scenario file (.json, .yaml)')
        _add_selectors(p, command)
        _add_common(p)

    batch = sub.add_parser('batch', help='run one command over several scenarios')
    batch.add_argument('--scenario', action='append', required=True, help='scenario file; repeatable')
    batch.add_argument('--command', dest='batch_command', default='crosscheck', choices=ScenarioRunner.COMMANDS)
    batch.add_argument('--set', help='named set used in every scenario')
    _add_common(batch)
    return parser


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def _flags(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        'horizon': args.horizon,
        'threshold': args.threshold,
        'eps_low': args.eps_low,
        'delta': args.delta,
        'progress': args.progress,
        'set': getattr(args, 'set', None),
        'vector': getattr(args, 'vector', None),
        'family': getattr(args, 'family', None),
        'check': getattr(args, 'check', None),
    }


def _run_single(args: argparse.Namespace) -> None:
    scenario = parse_scenario(args.scenario)
    report = run_command(args.command, scenario, _flags(args), config_path=args.config)
    if args.out:
        emit(report, args.fmt, out=args.out)
        sys.stdout.write(render_summary(report))
    else:
        emit(report, args.fmt, stream=sys.stdout)


def _run_batch(args: argparse.Namespace) -> None:
    out_dir = Path(args.out) if args.out else None
    paths = tqdm(args.scenario, desc='scenarios', disable=not args.progress)
    for path in paths:
        scenario = parse_scenario(path)
        report = run_command(args.batch_command, scenario, _flags(args), config_path=args.config)
        if out_dir is not None:
            target = out_dir / f"{scenario.name}.{args.batch_command}.{args.fmt}"
            emit(report, args.fmt, out=target)
            sys.stdout.write(render_summary(report))
        else:
            emit(report, args.fmt, stream=sys.stdout)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT, stream=sys.stderr)

    try:
        if args.command == 'batch':
            _run_batch(args)
        else:
            _run_single(args)
    except OlxError as e:
        code = exit_code_for(e)
        print(f"olx: error: {e}", file=sys.stderr)
        logger.debug("Exiting with status %d", code, exc_info=True)
        return code
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
