#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
images.py

Image and depth containers shared by every MVBLUR package.

Image holds H x W x 3 linear radiance. DepthMap holds H x W camera-frame z-depth with NaN marking
pixels that carry no depth (ray misses, failed warps); validity is derived from the data.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Image:
    """
    Linear RGB radiance.

    Attributes:
        data (np.ndarray): float64 array of shape (H, W, 3), finite and non-negative.
    """
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ValueError(f"Image data must have shape (H, W, 3), got {data.shape}")
        if not np.all(np.isfinite(data)) or np.any(data < 0):
            raise ValueError("Image data must be finite and non-negative")
        object.__setattr__(self, "data", data)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @staticmethod
    def filled(width: int, height: int, value) -> "Image":
        return Image(np.broadcast_to(np.asarray(value, dtype=np.float64), (height, width, 3)).copy())


@dataclass(frozen=True, eq=False)
class DepthMap:
    """
    Per-pixel camera-frame z-depth.

    Attributes:
        data (np.ndarray): float64 array of shape (H, W); NaN marks invalid pixels.
    """
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError(f"Depth data must have shape (H, W), got {data.shape}")
        data[~(np.isfinite(data) & (data > 0))] = np.nan
        object.__setattr__(self, "data", data)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def valid(self) -> np.ndarray:
        return np.isfinite(self.data)

    def filled(self, fill: float = 0.0) -> np.ndarray:
        """The depth values with invalid pixels replaced by `fill`."""
        return np.where(self.valid, self.data, fill)

    @staticmethod
    def from_values(values: np.ndarray, valid: np.ndarray) -> "DepthMap":
        return DepthMap(np.where(valid, values, np.nan))
