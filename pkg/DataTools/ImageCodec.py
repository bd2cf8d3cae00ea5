#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ImageCodec.py

Gamma-encoded 8- or 16-bit PNG storage of linear images through OpenCV.
Stored value = round(clip(x, 0, 1) ** (1 / gamma) * (2 ** bits - 1)).
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import os

import cv2
import numpy as np

from DataTools.Errors import DatasetError, MissingFile
from renderer.images import Image

DEFAULT_GAMMA = 2.2
BIT_DEPTHS = {8: np.uint8, 16: np.uint16}


def quantize(display: np.ndarray, bit_depth: int) -> np.ndarray:
    if bit_depth not in BIT_DEPTHS:
        raise ValueError(f"Unsupported bit depth {bit_depth}, expected one of {sorted(BIT_DEPTHS)}")
    peak = (1 << bit_depth) - 1
    return np.rint(np.clip(display, 0.0, 1.0) * peak).astype(BIT_DEPTHS[bit_depth])


def dequantize(stored: np.ndarray) -> np.ndarray:
    peak = float(np.iinfo(stored.dtype).max)
    return stored.astype(np.float64) / peak


def write_png(path: str, img: Image, bit_depth: int = 16, gamma: float = DEFAULT_GAMMA):
    """
    Raises:
        DatasetError: If OpenCV cannot write the file.
    """
    display = np.power(np.clip(img.data, 0.0, 1.0), 1.0 / gamma)
    stored = quantize(display, bit_depth)
    if not cv2.imwrite(path, cv2.cvtColor(stored, cv2.COLOR_RGB2BGR)):
        raise DatasetError(f"Could not write image '{path}'")


def read_png(path: str, gamma: float = DEFAULT_GAMMA) -> Image:
    """
    Decode a stored PNG back to linear radiance.

    Raises:
        MissingFile: If the file does not exist.
        DatasetError: If OpenCV cannot decode it.
    """
    if not os.path.isfile(path):
        raise MissingFile(f"Image file '{path}' does not exist")
    stored = cv2.imread(path, cv2.IMREAD_UNCHANGED)
    if stored is None or stored.ndim != 3:
        raise DatasetError(f"Could not decode RGB image '{path}'")
    display = dequantize(cv2.cvtColor(stored, cv2.COLOR_BGR2RGB))
    return Image(np.power(display, gamma))
