#!/usr/bin/python
# -*- coding: utf-8 -*-
import pytest

from SaddleCenterLoops.base.commands import (PipelineCommand,
                                             PortraitCmd,
                                             default_factory)
from SaddleCenterLoops.base.factory import CommandFactory
from SaddleCenterLoops.base.model import RunConfig
from SaddleCenterLoops.errors import CommandRegistrationError


class EchoCmd(PipelineCommand):
    """Writes nothing."""

    COMMAND_NAME = 'echo'

    def execute(self):
        pass


@pytest.fixture
def factory():
    factory = CommandFactory()
    factory.clear_registered_commands()
    yield factory
    default_factory()


def test_default_factory_names():
    assert default_factory().names == ['check', 'hunt', 'normalize',
                                       'portrait', 'return-map']


def test_registry_is_shared_between_factories(factory):
    factory.register_command(EchoCmd)
    assert CommandFactory().names == ['echo']


def test_duplicate_name_raises(factory):
    factory.register_command(EchoCmd)
    with pytest.raises(CommandRegistrationError):
        factory.register_command(EchoCmd)


def test_duplicate_alias_raises(factory):
    factory.register_command(EchoCmd, alias='e')
    with pytest.raises(CommandRegistrationError):
        factory.register_command(PortraitCmd, alias='e')


def test_create_by_name_and_alias(factory, tmp_path):
    factory.register_command(EchoCmd, alias='e')
    config = RunConfig()
    by_name = factory.create_command_instance('echo', config=config,
                                              out_dir=str(tmp_path))
    by_alias = factory.create_command_instance(alias='e', config=config,
                                               out_dir=str(tmp_path), jobs=0)
    assert isinstance(by_name, EchoCmd)
    assert isinstance(by_alias, EchoCmd)
    assert by_alias.jobs == 1
    assert by_name.seed == config['seed']
    assert factory.aliases == {'e': 'echo'}


def test_unknown_command_is_none(factory):
    assert factory.create_command_instance('missing', config=RunConfig()) is None


def test_register_none_is_ignored(factory):
    factory.register_command(None)
    assert factory.names == []
