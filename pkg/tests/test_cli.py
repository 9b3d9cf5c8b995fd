#!/usr/bin/python
# -*- coding: utf-8 -*-
import json

import pytest

from SaddleCenterLoops.base.commands import PipelineCommand, default_factory
from SaddleCenterLoops.base.factory import CommandFactory
from SaddleCenterLoops.cli import main
from SaddleCenterLoops.constants import (EXIT_CONFIG_ERROR,
                                         EXIT_INVARIANT_FAILURE,
                                         EXIT_OK)
from SaddleCenterLoops.errors import (InvariantFailure,
                                      NoCrossingError,
                                      RealnessError,
                                      SaddleCenterLoopsError)


class BrokenCmd(PipelineCommand):
    """Fails with a solver error."""

    COMMAND_NAME = 'broken'

    def execute(self):
        raise NoCrossingError('never crossed')


class ComplexChartCmd(PipelineCommand):
    """Fails to realify a chart."""

    COMMAND_NAME = 'complex-chart'

    def execute(self):
        raise RealnessError('chart component 0: imaginary residue 1e+00')


class FailingCheckCmd(PipelineCommand):
    """Fails an invariant check."""

    COMMAND_NAME = 'failing-check'

    def execute(self):
        self.write_json('check.json', {'x': {'passed': False}})
        raise InvariantFailure('failed checks: x')


@pytest.fixture
def failing_factory():
    factory = CommandFactory()
    factory.clear_registered_commands()
    factory.register_command(BrokenCmd)
    factory.register_command(ComplexChartCmd)
    factory.register_command(FailingCheckCmd)
    yield factory
    default_factory()


def _write_config(tmp_path, data, name='run.json'):
    file_path = tmp_path / name
    file_path.write_text(json.dumps(data))
    return str(file_path)


def _manifest(out_dir):
    with open(str(out_dir / 'manifest.json')) as data_file:
        return json.load(data_file)


def test_portrait_writes_artifacts(tmp_path):
    out = tmp_path / 'portrait'
    assert main(['portrait', '--out', str(out)]) == EXIT_OK
    manifest = _manifest(out)
    assert manifest['status'] == 'ok'
    assert manifest['error'] is None
    assert manifest['files'] == ['homoclinic.csv', 'portrait.csv']
    assert manifest['config']['numerics']['delta'] == 0.02

    lines = (out / 'portrait.csv').read_text().splitlines()
    assert lines[0] == 'alpha,kind,q,p_upper,p_lower'
    assert len(lines) == 1 + 5 * 401
    lines = (out / 'homoclinic.csv').read_text().splitlines()
    assert lines[0] == 't,q,p'
    assert len(lines) == 1 + 401


def test_portrait_without_levels(tmp_path):
    config = _write_config(tmp_path, {'numerics': {'portrait_alphas': []}})
    out = tmp_path / 'empty'
    assert main(['portrait', '--config', config, '--out', str(out)]) == EXIT_OK
    lines = (out / 'portrait.csv').read_text().splitlines()
    assert lines == ['alpha,kind,q,p_upper,p_lower']


def test_seed_override_in_manifest(tmp_path):
    out = tmp_path / 'seeded'
    assert main(['portrait', '--out', str(out), '--seed', '7']) == EXIT_OK
    assert _manifest(out)['seed'] == 7


def test_normalize_at_parameter(tmp_path):
    config = _write_config(tmp_path, {'model': {'lambda': 0.01},
                                      'pipeline': {'n': 4}})
    out = tmp_path / 'nf'
    assert main(['normalize', '--config', config, '--out', str(out)]) == EXIT_OK
    assert _manifest(out)['files'] == ['normal_form.json']
    with open(str(out / 'normal_form.json')) as data_file:
        bundle = json.load(data_file)
    assert bundle['degree'] == 4
    assert bundle['symplecticity'] <= 1e-8
    assert isinstance(bundle['N'], str)


@pytest.mark.parametrize('text', [
    '{"numerics": {"delta": 0.02',
    '{"numerics": {"delta": -1.0}}',
    '{"numerics": {"detla": 0.02}}',
    '{"model": {"mode": "decimal"}}',
    '[1, 2]',
])
def test_config_errors_exit_code(tmp_path, text):
    file_path = tmp_path / 'bad.json'
    file_path.write_text(text)
    code = main(['portrait', '--config', str(file_path),
                 '--out', str(tmp_path / 'out')])
    assert code == EXIT_CONFIG_ERROR
    assert not (tmp_path / 'out').exists()


def test_missing_config_file(tmp_path):
    code = main(['portrait', '--config', str(tmp_path / 'missing.json')])
    assert code == EXIT_CONFIG_ERROR


def test_solver_failure_exit_code(tmp_path, failing_factory):
    out = tmp_path / 'broken'
    code = main(['broken', '--out', str(out)], factory=failing_factory)
    assert code == EXIT_INVARIANT_FAILURE
    manifest = _manifest(out)
    assert manifest['status'] == 'failed'
    assert manifest['error'] == 'NoCrossingError: never crossed'


def test_invariant_failure_exit_code(tmp_path, failing_factory):
    out = tmp_path / 'check'
    code = main(['failing-check', '--out', str(out)], factory=failing_factory)
    assert code == EXIT_INVARIANT_FAILURE
    manifest = _manifest(out)
    assert manifest['status'] == 'failed'
    assert manifest['files'] == ['check.json']


def test_error_hierarchy():
    assert issubclass(InvariantFailure, SaddleCenterLoopsError)
    assert issubclass(NoCrossingError, SaddleCenterLoopsError)


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(['--version'])
    assert info.value.code == 0
    assert 'saddle-loops' in capsys.readouterr().out


def test_missing_command():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_unknown_command():
    with pytest.raises(SystemExit) as info:
        main(['fly'])
    assert info.value.code == 2


def test_chart_failure_exit_code(tmp_path, failing_factory):
    out = tmp_path / 'complex'
    code = main(['complex-chart', '--out', str(out)], factory=failing_factory)
    assert code == EXIT_INVARIANT_FAILURE
    assert _manifest(out)['error'].startswith('RealnessError')


def test_degenerate_family_exit_code(tmp_path):
    config = _write_config(tmp_path, {'model': {'c10': 0.0}})
    out = tmp_path / 'degenerate'
    code = main(['normalize', '--config', config, '--out', str(out)])
    assert code == EXIT_CONFIG_ERROR
    assert _manifest(out)['error'].startswith('DegenerateHypothesisError')


# === PIPELINE RUNS ===

#: a single area parameter and coarse curves keep the runs short.
SMALL_RUN = {'numerics': {'n_alphas': 1, 'samples': 16, 'max_loops': 2}}


def test_return_map_run(tmp_path):
    config = _write_config(tmp_path, SMALL_RUN)
    out = tmp_path / 'return_map'
    assert main(['return-map', '--config', config, '--out', str(out)]) \
        == EXIT_OK
    manifest = _manifest(out)
    assert manifest['status'] == 'ok'
    assert manifest['files'] == ['return_map_eps00_mu00.csv',
                                 'twist_eps00_mu00.json']
    with open(str(out / 'twist_eps00_mu00.json')) as data_file:
        report = json.load(data_file)
    assert report['twist']['negative']
    assert report['mu'] == 0.0
    lines = (out / 'return_map_eps00_mu00.csv').read_text().splitlines()
    assert len(lines) == 1 + 4 * 8


def test_hunt_run(tmp_path):
    config = _write_config(tmp_path, SMALL_RUN)
    out = tmp_path / 'hunt'
    assert main(['hunt', '--config', config, '--out', str(out)]) == EXIT_OK
    manifest = _manifest(out)
    assert manifest['status'] == 'ok'
    assert 'hunt_eps00_mu00_alpha00.json' in manifest['files']
    with open(str(out / 'hunt_eps00_mu00_alpha00.json')) as data_file:
        result = json.load(data_file)
    assert result['loop_count'] == 1
    assert result['trap']['kind'] in ('invariant_circle', 'band_oracle')


def test_check_run(tmp_path):
    config = _write_config(tmp_path, SMALL_RUN)
    out = tmp_path / 'check'
    assert main(['check', '--config', config, '--out', str(out)]) == EXIT_OK
    assert _manifest(out)['files'] == ['check.json']
    with open(str(out / 'check.json')) as data_file:
        report = json.load(data_file)
    assert set(report) == {
        'I2_conservation', 'I2_drift_slope', 'chart_conjugacy',
        'normal_form_commutator', 'one_loop_connection',
        'portrait_homoclinic', 'return_map_jacobian', 'section_flux',
        'twist_negativity', 'uniform_estimates'}
    assert all(entry['passed'] for entry in report.values())
    assert report['chart_conjugacy']['threshold'] == 1e-8
