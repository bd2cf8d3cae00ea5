#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MVBLUR Tests

A multi-view motion blur and noise dataset synthesizer.

A set of tests to run against mvblur and its packages.

"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"

__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"
__description__ = "A multi-view motion blur and noise dataset synthesizer."
__app_name__ = "MVBLUR"
