"""
Tests for the olx command-line interface.
"""

import json
import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from olx.cli import build_parser, main

SCENARIOS = Path(__file__).parent.parent / 'scenarios'
S3 = str(SCENARIOS / 's3_shift.json')


@pytest.fixture
def collapse_file(tmp_path):
    path = tmp_path / 'collapse.json'
    path.write_text(json.dumps({
        'space': {'domain': 'finite', 'atoms': ['a', 'b', 'c'], 'weights': {'kind': 'explicit', 'masses': [1, 2, 3]}},
        'phi': {'kind': 'power', 'p': 2},
        'weight': {'kind': 'constant', 'c': 1},
        'tau': {'kind': 'finite_map', 'table': {'a': 'c', 'b': 'c', 'c': 'a'}},
        'sets': {'A': ['a']},
    }))
    return str(path)


class TestParser:
    """Argument parsing."""

    def test_check_choices(self):
        """--check is repeatable and restricted to the registry."""
        args = build_parser().parse_args(['criteria', '--scenario', S3, '--check', 'T23c', '--check', 'T22'])
        assert args.check == ['T23c', 'T22']
        with pytest.raises(SystemExit):
            build_parser().parse_args(['criteria', '--scenario', S3, '--check', 'T99'])

    def test_progress_unset(self):
        """Unset flags stay None so scenario defaults apply."""
        args = build_parser().parse_args(['orbit', '--scenario', S3])
        assert args.progress is None and args.horizon is None


class TestMain:
    """End-to-end runs through main()."""

    def test_norm_stdout(self, capsys):
        """JSON goes to stdout with the norm of χ_{0}."""
        assert main(['norm', '--scenario', S3, '--set', 'A0']) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload['command'] == 'norm'
        assert payload['results']['norm'] == 1.0

    def test_criteria_witness(self, capsys):
        """T23c on S3 is witnessed at n = 20."""
        assert main(['criteria', '--scenario', S3, '--check', 'T23c', '--threshold', '1e6']) == 0
        (verdict,) = json.loads(capsys.readouterr().out)['results']
        assert verdict['status'] == 'WitnessedDivergence'
        assert verdict['witness']['n'] == 20

    def test_infinite_witness_is_strict_json(self, capsys):
        """An infinite witness value is written as a string, not as Infinity."""
        assert main(['criteria', '--scenario', str(SCENARIOS / 'counting_shift.json'), '--check', 'T23c']) == 0
        out = capsys.readouterr().out
        assert 'Infinity' not in out

        def reject(token):
            raise ValueError(f"non-standard JSON constant {token}")

        (verdict,) = json.loads(out, parse_constant=reject)['results']
        assert verdict['status'] == 'DegenerateNullPreimage'
        assert verdict['witness']['value'] == 'inf'

    def test_orbit_csv(self, tmp_path, capsys):
        """--out writes the trace and prints the summary."""
        out = tmp_path / 'o.csv'
        code = main([
            'orbit', '--scenario', S3, '--vector', 'blocks1', '--horizon', '300',
            '--format', 'csv', '--out', str(out),
        ])
        assert code == 0
        assert len(out.read_text().splitlines()) == 302
        assert 'SemiIrregular' in capsys.readouterr().out

    def test_missing_field_exit_code(self, tmp_path, capsys):
        """A scenario without phi exits with 2 and names the field."""
        document = json.loads(Path(S3).read_text())
        del document['phi']
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps(document))
        assert main(['norm', '--scenario', str(path)]) == 2
        assert 'phi' in capsys.readouterr().err

    def test_non_integer_count_exit_code(self, tmp_path, capsys):
        """A non-integer generator count exits with 2 and names the field."""
        document = json.loads(Path(S3).read_text())
        document['families']['G'] = {'sets': ['A0'], 'subsequence': {'arithmetic': {'count': 'many'}}}
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps(document))
        assert main(['norm', '--scenario', str(path)]) == 2
        assert 'families.G.subsequence.arithmetic.count' in capsys.readouterr().err

    def test_non_integer_size_exit_code(self, tmp_path, capsys):
        """A non-integer space size exits with 2 and names the field."""
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps({
            'space': {'domain': 'finite', 'size': '3x', 'weights': {'kind': 'constant', 'c': 1}},
            'phi': {'kind': 'power', 'p': 1},
            'weight': {'kind': 'constant', 'c': 1},
            'tau': {'kind': 'identity'},
        }))
        assert main(['norm', '--scenario', str(path)]) == 2
        assert 'space.size' in capsys.readouterr().err

    def test_missing_file_exit_code(self, tmp_path):
        """An unreadable scenario is a scenario error."""
        assert main(['norm', '--scenario', str(tmp_path / 'absent.json')]) == 2

    def test_unknown_set_exit_code(self):
        """Selecting an unknown set is a scenario error."""
        assert main(['norm', '--scenario', S3, '--set', 'nope']) == 2

    def test_precondition_exit_code(self, collapse_file, capsys):
        """Forward images of a non-injective map exit with 3."""
        assert main(['criteria', '--scenario', collapse_file, '--check', 'T23d']) == 3
        assert 'injective' in capsys.readouterr().err

    def test_norm_csv_rejected(self):
        """The norm command has no CSV form."""
        assert main(['norm', '--scenario', S3, '--format', 'csv']) == 2

    def test_config_file(self, tmp_path, capsys):
        """--config feeds settings the scenario does not fix."""
        config = tmp_path / 'olx.yaml'
        config.write_text('horizon: 19\n')
        assert main(['criteria', '--scenario', S3, '--check', 'T23c', '--config', str(config)]) == 0
        (verdict,) = json.loads(capsys.readouterr().out)['results']
        assert verdict['status'] == 'BoundedAtHorizon'

    def test_batch(self, tmp_path, capsys):
        """batch writes one report per scenario."""
        identity = str(SCENARIOS / 'identity.json')
        code = main([
            'batch', '--command', 'criteria', '--scenario', S3, '--scenario', identity,
            '--set', 'A0', '--out', str(tmp_path),
        ])
        assert code == 0
        assert sorted(p.name for p in tmp_path.iterdir()) == [
            'identity.criteria.json', 's3_shift.criteria.json',
        ]
        report = json.loads((tmp_path / 'identity.criteria.json').read_text())
        assert report['results'][0]['status'] == 'BoundedAtHorizon'
