#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Errors.py: Exceptions raised while reading or writing datasets.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"


class DatasetError(Exception):
    pass


class MissingFile(DatasetError, FileNotFoundError):
    pass


class CorruptDepth(DatasetError, ValueError):
    pass


class SchemaMismatch(DatasetError):
    pass


class InconsistentManifest(DatasetError):
    pass


class MixedIntrinsics(DatasetError):
    pass
