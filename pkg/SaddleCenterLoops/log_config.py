#!/usr/bin/python
# -*- coding: utf-8 -*-
import logging

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger('SaddleCenterLoops')
if not logger.handlers:
    _handler = logging.StreamHandler()
    _handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(_handler)
logger.setLevel(logging.INFO)


def set_log_level(level):
    """
    Set the level of the package logger.

    Args:
        level (int or str): logging level, e.g. ``logging.DEBUG`` or ``'DEBUG'``.
    """
    if isinstance(level, str):
        level = getattr(logging, level.upper())
    logger.setLevel(level)
