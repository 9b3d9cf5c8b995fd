#!/usr/bin/python
# -*- coding: utf-8 -*-
import json
import os

import pytest

from SaddleCenterLoops.base.model import RunConfig
from SaddleCenterLoops.errors import ConfigError
from SaddleCenterLoops.normal_form import ResonantFamily

SHIPPED_CONFIG = os.path.join(os.path.dirname(os.path.dirname(__file__)),
                              'config', 'default_config.json')


def test_defaults():
    config = RunConfig()
    assert config['pipeline.n'] == 5
    assert config['pipeline.N0'] == 5
    assert config['numerics.delta'] == 0.02
    assert config['numerics.band'] == [0.03125, 0.0625]
    assert config['numerics.tolerances.intersection'] == 1e-6


def test_orders_follow_k0():
    config = RunConfig({'pipeline': {'k0': 2}})
    assert config['pipeline.n'] == 7
    assert config['pipeline.N0'] == 9
    config = RunConfig({'pipeline': {'k0': 2, 'n': 4}})
    assert config['pipeline.n'] == 4


def test_unknown_key_names_dotted_path():
    with pytest.raises(ConfigError) as info:
        RunConfig({'numerics': {'tolerances': {'solver': 1e-9}}})
    assert info.value.key == 'numerics.tolerances.solver'


def test_invalid_value_names_key():
    with pytest.raises(ConfigError) as info:
        RunConfig({'numerics': {'band': [0.0625, 0.03125]}})
    assert info.value.key == 'numerics.band'
    with pytest.raises(ConfigError):
        RunConfig({'numerics': {'epsilons': []}})
    with pytest.raises(ConfigError):
        RunConfig({'model': {'extra_coefficients': [
            {'exponents': [1, 2, 0], 'value': 0.2}]}})
    with pytest.raises(ConfigError):
        RunConfig({'seed': True})


def test_section_must_be_object():
    with pytest.raises(ConfigError) as info:
        RunConfig({'numerics': 3})
    assert info.value.key == 'numerics'


def test_lookup():
    config = RunConfig()
    assert config.get('numerics.missing', 'x') == 'x'
    with pytest.raises(ConfigError):
        config['model.omega0.value']


def test_shipped_config_loads():
    config = RunConfig.from_file(SHIPPED_CONFIG)
    family = ResonantFamily.from_config(config)
    assert config['numerics.epsilons'] == [0.35]
    assert family.mode == 'float'
    assert json.loads(config.serial)['output'] == 'runs/default'


def test_serial_round_trip():
    config = RunConfig({'numerics': {'mus': [0.0, 0.1]}})
    again = RunConfig(json.loads(config.serial))
    assert again.to_dict == config.to_dict


def test_smallness_report():
    report = RunConfig().smallness_report()
    assert all(report.values())
    report = RunConfig({'numerics': {'delta': 0.5,
                                     'alphas': [1.0]}}).smallness_report()
    assert not report['delta <= rho0 / 4']
    assert not report['alpha window inside band']
    assert report['epsilon < 1']
