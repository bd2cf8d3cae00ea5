#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
sampling.py

Bilinear grid sampling in continuous pixel coordinates.

Pixel (i, j) covers [i, i + 1) x [j, j + 1) and its value sits at the center (i + 0.5, j + 0.5).
Samples inside the image rectangle [0, W] x [0, H] are valid; those within half a pixel of the
border clamp to the edge pixels. Samples outside read 0 and are flagged out of bounds.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import numpy as np


def _corner(data: np.ndarray, rows: np.ndarray, cols: np.ndarray, weight: np.ndarray) -> np.ndarray:
    values = data[rows, cols]
    if values.ndim > weight.ndim:
        weight = weight[..., None]
    # zero-weight corners do not propagate NaN
    return np.where(weight > 0, weight * values, 0.0)


def bilinear_sample_grid(data, xs, ys) -> tuple:
    """
    Sample an (H, W) or (H, W, C) array at continuous coordinates.

    Args:
        data: Array, Image or DepthMap.
        xs: Horizontal coordinates, any shape.
        ys: Vertical coordinates, same shape as xs.

    Returns:
        tuple: (values of shape xs.shape (+ (C,)), in-bounds boolean mask).
    """
    data = np.asarray(getattr(data, "data", data), dtype=np.float64)
    height, width = data.shape[:2]
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    in_bounds = (xs >= 0) & (xs <= width) & (ys >= 0) & (ys <= height)

    x = np.clip(np.where(in_bounds, xs, 0.5) - 0.5, 0.0, width - 1.0)
    y = np.clip(np.where(in_bounds, ys, 0.5) - 0.5, 0.0, height - 1.0)
    x0 = np.floor(x).astype(np.int64)
    y0 = np.floor(y).astype(np.int64)
    x1 = np.minimum(x0 + 1, width - 1)
    y1 = np.minimum(y0 + 1, height - 1)
    wx = x - x0
    wy = y - y0

    values = (_corner(data, y0, x0, (1.0 - wx) * (1.0 - wy)) + _corner(data, y0, x1, wx * (1.0 - wy))
              + _corner(data, y1, x0, (1.0 - wx) * wy) + _corner(data, y1, x1, wx * wy))
    mask = in_bounds if values.ndim == in_bounds.ndim else in_bounds[..., None]
    return np.where(mask, values, 0.0), in_bounds


def bilinear_sample(data, xy) -> tuple:
    """
    Sample one continuous location.

    Returns:
        tuple: (value, in_bounds); value is a float for 2-D data, an array of channels otherwise.
    """
    values, in_bounds = bilinear_sample_grid(data, np.array([xy[0]]), np.array([xy[1]]))
    value = values[0]
    return (float(value) if np.ndim(value) == 0 else value), bool(in_bounds[0])
