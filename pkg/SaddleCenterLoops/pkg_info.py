#!/usr/bin/python
# -*- coding: utf-8 -*-
__version__ = '0.1.0'
__status__ = 'Work in Progress'
__license__ = 'MIT'

__author__ = 'Saddle-Center Loops contributors'
__email__ = 'saddle.loops@users.noreply.github.com'

__module_name__ = 'SaddleCenterLoops'
__url__ = 'https://github.com/saddle-loops/SaddleCenterLoops'
