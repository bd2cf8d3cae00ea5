#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
DepthCodec.py

Depth map files: the 4-byte magic "DGF1", little-endian u32 width and height, then width * height
little-endian f32 values in row-major order. NaN marks invalid pixels.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import os

import numpy as np

from DataTools.Errors import CorruptDepth, MissingFile
from renderer.images import DepthMap

MAGIC = b"DGF1"
HEADER_SIZE = len(MAGIC) + 8


def encode_depth(depth: DepthMap) -> bytes:
    header = MAGIC + np.array([depth.width, depth.height], dtype="<u4").tobytes()
    return header + depth.data.astype("<f4").tobytes()


def decode_depth(payload: bytes, name: str = "<bytes>") -> DepthMap:
    """
    Raises:
        CorruptDepth: If the magic, header or payload size is wrong.
    """
    width, height = _parse_header(payload[:HEADER_SIZE], name)
    expected = HEADER_SIZE + 4 * width * height
    if len(payload) != expected:
        raise CorruptDepth(f"Depth file {name} has {len(payload)} bytes, expected {expected}")
    values = np.frombuffer(payload, dtype="<f4", offset=HEADER_SIZE).reshape(height, width)
    return DepthMap(values.astype(np.float64))


def _parse_header(header: bytes, name: str) -> tuple:
    if len(header) < HEADER_SIZE or header[:len(MAGIC)] != MAGIC:
        raise CorruptDepth(f"Depth file {name} does not start with {MAGIC!r}")
    width, height = (int(v) for v in np.frombuffer(header, dtype="<u4", offset=len(MAGIC), count=2))
    return width, height


def write_depth(path: str, depth: DepthMap):
    with open(path, "wb") as file:
        file.write(encode_depth(depth))


def read_depth(path: str) -> DepthMap:
    if not os.path.isfile(path):
        raise MissingFile(f"Depth file '{path}' does not exist")
    with open(path, "rb") as file:
        return decode_depth(file.read(), path)


def check_depth_file(path: str, width: int = None, height: int = None) -> tuple:
    """
    Validate a depth file's header and size without decoding it.

    Returns:
        tuple: (width, height).

    Raises:
        MissingFile: If the file does not exist.
        CorruptDepth: If the header or size is wrong, or the size does not match the expected one.
    """
    if not os.path.isfile(path):
        raise MissingFile(f"Depth file '{path}' does not exist")
    with open(path, "rb") as file:
        file_width, file_height = _parse_header(file.read(HEADER_SIZE), path)
    expected = HEADER_SIZE + 4 * file_width * file_height
    actual = os.path.getsize(path)
    if actual != expected:
        raise CorruptDepth(f"Depth file {path} has {actual} bytes, expected {expected}")
    if width is not None and (file_width, file_height) != (width, height):
        raise CorruptDepth(f"Depth file {path} is {file_width}x{file_height}, expected {width}x{height}")
    return file_width, file_height
