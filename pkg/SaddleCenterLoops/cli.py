#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Command line front-end ``saddle-loops``.

Example:

.. code-block:: bash

    saddle-loops check --config config/default_config.json --out runs/check
    saddle-loops hunt --config my_run.json --jobs 4
"""
import argparse
import logging
import sys

from .base.commands import default_factory
from .base.model import RunConfig
from .constants import EXIT_CONFIG_ERROR, EXIT_INVARIANT_FAILURE, EXIT_OK
from .errors import (ConfigError,
                     DegenerateHypothesisError,
                     InvariantFailure,
                     SaddleCenterLoopsError,
                     WrongHalfBifurcationError)
from .log_config import logger, set_log_level
from .pkg_info import __version__

#: Errors that mean the configured family itself is not admissible.
CONFIG_ERRORS = (ConfigError, DegenerateHypothesisError,
                 WrongHalfBifurcationError)


def build_parser(factory=None):
    """
    Argument parser with one sub-command per registered pipeline command.

    Args:
        factory (CommandFactory): command registry, the default pipeline
            when None.

    Returns:
        argparse.ArgumentParser: parser.
    """
    factory = factory or default_factory()
    parser = argparse.ArgumentParser(
        prog='saddle-loops',
        description='Normal forms, return maps and multi-loop homoclinic '
                    'search near a saddle-center resonance.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(__version__))

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH',
                        help='JSON run configuration (defaults when omitted)')
    common.add_argument('--out', metavar='DIR',
                        help='output directory, overrides "output"')
    common.add_argument('--jobs', metavar='N', type=int, default=1,
                        help='worker processes for sweeps')
    common.add_argument('--seed', metavar='S', type=int,
                        help='seed of the sampled checks, overrides "seed"')
    common.add_argument('-v', '--verbose', action='store_true',
                        help='debug logging')

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True
    for name in factory.names:
        doc = (factory.commands[name].__doc__ or '').strip()
        commands.add_parser(name, parents=[common],
                            help=doc.split('\n')[0] if doc else None)
    return parser


def main(argv=None, factory=None):
    """
    Run one pipeline command.

    Args:
        argv (list[str]): arguments, ``sys.argv[1:]`` when None.
        factory (CommandFactory): command registry.

    Returns:
        int: exit status, 0 on success, 2 on a configuration error or a
        family outside the resonance hypotheses and 3 on a failed invariant
        check or any other package error.
    """
    factory = factory or default_factory()
    args = build_parser(factory).parse_args(argv)
    set_log_level(logging.DEBUG if args.verbose else logging.INFO)

    try:
        config = (RunConfig.from_file(args.config) if args.config
                  else RunConfig())
    except ConfigError as e:
        logger.error('configuration error: {}'.format(e))
        return EXIT_CONFIG_ERROR
    config.smallness_report()

    command = factory.create_command_instance(
        args.command, config=config, out_dir=args.out, jobs=args.jobs,
        seed=args.seed)
    try:
        command.run()
    except CONFIG_ERRORS as e:
        logger.error('configuration error: {}: {}'.format(
            e.__class__.__name__, e))
        return EXIT_CONFIG_ERROR
    except InvariantFailure as e:
        logger.error(str(e))
        return EXIT_INVARIANT_FAILURE
    except SaddleCenterLoopsError as e:
        logger.error('{} failed: {}: {}'.format(
            args.command, e.__class__.__name__, e))
        return EXIT_INVARIANT_FAILURE
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
