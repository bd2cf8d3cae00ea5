#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
metrics.py

Image quality and depth stability metrics, and the histogram helper behind dataset statistics.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter

from objectives.losses import NoValidPixels, ShapeMismatch, as_array

logger = logging.getLogger(__name__)

PSNR_IDENTICAL = math.inf


def psnr(a, b, peak: float = 1.0) -> float:
    """
    Peak signal to noise ratio in dB; identical inputs give PSNR_IDENTICAL.
    """
    a, b = as_array(a), as_array(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"Shapes differ: {a.shape} vs {b.shape}")
    if peak <= 0:
        raise ValueError(f"Peak must be positive, got {peak}")
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return PSNR_IDENTICAL
    return 10.0 * math.log10(peak * peak / mse)


def _ssim_channel(a: np.ndarray, b: np.ndarray, sigma: float, truncate: float, c1: float, c2: float) -> np.ndarray:
    def blur(x):
        return gaussian_filter(x, sigma=sigma, truncate=truncate, mode="reflect")

    mu_a, mu_b = blur(a), blur(b)
    var_a = blur(a * a) - mu_a * mu_a
    var_b = blur(b * b) - mu_b * mu_b
    cov = blur(a * b) - mu_a * mu_b
    return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) / ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2))


def ssim(a, b, window: int = 11, k1: float = 0.01, k2: float = 0.03, peak: float = 1.0,
         sigma: float = 1.5) -> float:
    """
    Mean structural similarity with a Gaussian window, averaged over channels.

    Args:
        a: Image or array (H, W) / (H, W, C).
        b: Same shape as a.
        window (int): Odd window size; the Gaussian is truncated at (window - 1) / 2 pixels.
        k1 (float): Luminance constant factor.
        k2 (float): Contrast constant factor.
        peak (float): Dynamic range.
        sigma (float): Gaussian standard deviation in pixels.

    Returns:
        float: The mean SSIM.
    """
    a, b = as_array(a), as_array(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"Shapes differ: {a.shape} vs {b.shape}")
    if window < 1 or window % 2 == 0:
        raise ValueError(f"SSIM window must be odd, got {window}")
    truncate = ((window - 1) / 2.0) / sigma
    c1 = (k1 * peak) ** 2
    c2 = (k2 * peak) ** 2
    if a.ndim == 2:
        return float(np.mean(_ssim_channel(a, b, sigma, truncate, c1, c2)))
    return float(np.mean([np.mean(_ssim_channel(a[..., c], b[..., c], sigma, truncate, c1, c2))
                          for c in range(a.shape[-1])]))


@dataclass(frozen=True)
class DepthStabilityReport:
    delta_abs: float
    delta_rel: float
    pixel_count: int


def depth_stability(d_ref, d_test, scene_range: float) -> DepthStabilityReport:
    """
    Mean absolute and range-relative depth change over pixels valid in both maps.

    Raises:
        NoValidPixels: If the maps share no valid pixel.
    """
    ref, test = as_array(d_ref), as_array(d_test)
    if ref.shape != test.shape:
        raise ShapeMismatch(f"Shapes differ: {ref.shape} vs {test.shape}")
    if scene_range <= 0:
        raise ValueError(f"Scene range must be positive, got {scene_range}")
    valid = np.isfinite(ref) & np.isfinite(test)
    count = int(np.count_nonzero(valid))
    if count == 0:
        raise NoValidPixels("Depth maps share no valid pixel")
    delta = np.abs(test[valid] - ref[valid])
    delta_abs = float(np.mean(delta))
    return DepthStabilityReport(delta_abs, delta_abs / scene_range, count)


@dataclass(frozen=True)
class Histogram:
    """
    Attributes:
        counts (np.ndarray): Per-bin counts.
        edges (np.ndarray): bins + 1 edges.
        underflow (int): Values below the range, -inf included.
        overflow (int): Values above the range, +inf included.
        invalid (int): NaN values, kept out of every bin.
    """
    counts: np.ndarray
    edges: np.ndarray
    underflow: int = 0
    overflow: int = 0
    invalid: int = 0

    @property
    def total(self) -> int:
        return int(self.counts.sum()) + self.underflow + self.overflow + self.invalid


def histogram(values, bins: int, value_range: tuple) -> Histogram:
    """
    Uniform-width histogram with overflow buckets on both sides and a separate count of NaN samples.
    """
    lo, hi = value_range
    if bins < 1:
        raise ValueError(f"Histogram needs at least one bin, got {bins}")
    if not lo < hi:
        raise ValueError(f"Histogram range must satisfy lo < hi, got ({lo}, {hi})")
    values = np.asarray(list(values), dtype=np.float64)
    nan = np.isnan(values)
    invalid = int(np.count_nonzero(nan))
    if invalid:
        logger.warning("Histogram over %d values skips %d NaN samples", values.size, invalid)
    values = values[~nan]
    counts, edges = np.histogram(values[np.isfinite(values)], bins=bins, range=(lo, hi))
    return Histogram(counts=counts, edges=edges, underflow=int(np.count_nonzero(values < lo)),
                     overflow=int(np.count_nonzero(values > hi)), invalid=invalid)
