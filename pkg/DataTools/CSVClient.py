#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CSVClient.py: A simple writer that sends CSV rows to a stream or a file.

This module defines a CSVClient class used by the command line tools to emit report tables either on a pipe
(such as sys.stdout) or into a file.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import csv
import io
import sys


class CSVClient:
    """
    CSV client that writes a header once and then rows.

    Attributes:
        header (list): Column names.
        pipe (io.TextIOWrapper): The stream rows are written to.
        float_format (str): Format applied to float cells.
    """

    def __init__(self, header: list, pipe: io.TextIOBase = None, path: str = None, float_format: str = "{:.6f}"):
        """
        Initialize the client on a pipe, or on a file at `path`.

        Args:
            header (list): Column names.
            pipe (io.TextIOBase): The stream to write to. Defaults to sys.stdout.
            path (str): File to create instead of writing to a pipe.
            float_format (str): Format for float cells.
        """
        self.header = list(header)
        self.float_format = float_format
        self._owned = path is not None
        self.pipe = open(path, "w", newline="") if self._owned else (pipe or sys.stdout)
        self._writer = csv.writer(self.pipe, lineterminator="\n")
        self._writer.writerow(self.header)

    def _cell(self, value):
        if isinstance(value, float):
            return self.float_format.format(value) if value == value and abs(value) != float("inf") else str(value)
        return value

    def write(self, *row):
        """
        Write one row.

        Raises:
            ValueError: If the row length does not match the header.
        """
        if len(row) != len(self.header):
            raise ValueError(f"Row has {len(row)} cells, header has {len(self.header)}")
        self._writer.writerow([self._cell(value) for value in row])

    def close(self):
        if self._owned:
            self.pipe.close()
        else:
            self.pipe.flush()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()
