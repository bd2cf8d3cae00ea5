#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for image quality metrics, depth stability and histograms.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import math

import numpy as np
import pytest

from objectives import (PSNR_IDENTICAL, NoValidPixels, ShapeMismatch, depth_stability, histogram, psnr, ssim)
from renderer import DepthMap, Image


def test_psnr_values():
    a = np.zeros((4, 4, 3))
    b = np.full((4, 4, 3), 0.1)
    assert psnr(a, b) == pytest.approx(20.0)
    assert psnr(a, a) == PSNR_IDENTICAL
    assert psnr(Image(b), Image(b * 2), peak=2.0) == pytest.approx(10.0 * math.log10(4.0 / 0.01))
    with pytest.raises(ShapeMismatch):
        psnr(a, b[:2])


def test_ssim_identity_and_degradation():
    rng = np.random.default_rng(8)
    image = rng.uniform(0.0, 1.0, (32, 32, 3))
    assert ssim(image, image) == pytest.approx(1.0)
    noisy = np.clip(image + rng.normal(0.0, 0.1, image.shape), 0.0, 1.0)
    noisier = np.clip(image + rng.normal(0.0, 0.3, image.shape), 0.0, 1.0)
    assert ssim(image, noisier) < ssim(image, noisy) < 1.0
    assert ssim(image[..., 0], image[..., 0]) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ssim(image, image, window=10)


def test_ssim_is_symmetric():
    rng = np.random.default_rng(9)
    a = rng.uniform(0.0, 1.0, (16, 16))
    b = rng.uniform(0.0, 1.0, (16, 16))
    assert ssim(a, b) == pytest.approx(ssim(b, a))


def test_ssim_of_negated_image_is_low():
    rng = np.random.default_rng(10)
    image = (rng.random((32, 32)) > 0.5).astype(np.float64)
    assert ssim(image, 1.0 - image) < 0.5
    color = np.repeat(image[..., None], 3, axis=2)
    assert ssim(color, 1.0 - color) < 0.5


@pytest.mark.parametrize("level,offset", [(0.3, 0.2), (0.05, 0.5), (0.8, -0.4)])
def test_ssim_of_constant_images_is_luminance_term(level, offset):
    c1 = (0.01 * 1.0) ** 2
    a = np.full((24, 24), level)
    b = np.full((24, 24), level + offset)
    expected = (2.0 * level * (level + offset) + c1) / (level ** 2 + (level + offset) ** 2 + c1)
    assert ssim(a, b) == pytest.approx(expected, abs=1e-9)


def test_depth_stability_identical():
    depth = DepthMap(np.linspace(1.0, 3.0, 20).reshape(4, 5))
    report = depth_stability(depth, depth, 2.0)
    assert (report.delta_abs, report.delta_rel) == (0.0, 0.0)
    assert report.pixel_count == 20


def test_depth_stability_offset():
    ref = np.full((3, 3), 2.0)
    report = depth_stability(ref, ref + 0.5, 5.0)
    assert report.delta_abs == 0.5
    assert report.delta_rel == 0.1


def test_depth_stability_skips_invalid():
    ref = DepthMap(np.array([[1.0, np.nan], [2.0, 3.0]]))
    test = DepthMap(np.array([[1.5, 2.0], [np.nan, 3.0]]))
    report = depth_stability(ref, test, 1.0)
    assert report.pixel_count == 2
    assert report.delta_abs == pytest.approx(0.25)
    with pytest.raises(NoValidPixels):
        depth_stability(np.full((2, 2), np.nan), np.ones((2, 2)), 1.0)
    with pytest.raises(ValueError):
        depth_stability(np.ones((2, 2)), np.ones((2, 2)), 0.0)


def test_histogram_counts_and_overflow():
    hist = histogram([0.1, 0.2, 0.55, 0.9, 1.0, -1.0, 3.0], bins=2, value_range=(0.0, 1.0))
    np.testing.assert_array_equal(hist.counts, [2, 3])
    np.testing.assert_allclose(hist.edges, [0.0, 0.5, 1.0])
    assert (hist.underflow, hist.overflow) == (1, 1)
    assert hist.total == 7
    with pytest.raises(ValueError):
        histogram([1.0], bins=0, value_range=(0.0, 1.0))
    with pytest.raises(ValueError):
        histogram([1.0], bins=3, value_range=(1.0, 1.0))


def test_histogram_of_uniform_draws_is_flat():
    rng = np.random.default_rng(13)
    hist = histogram(rng.uniform(0.0, 1.0, 10000), bins=10, value_range=(0.0, 1.0))
    assert hist.total == 10000
    assert (hist.underflow, hist.overflow, hist.invalid) == (0, 0, 0)
    np.testing.assert_allclose(hist.counts / hist.total, 0.1, atol=0.015)


def test_histogram_counts_nan_separately():
    hist = histogram([0.1, np.nan, 0.7, np.inf, -np.inf, np.nan], bins=2, value_range=(0.0, 1.0))
    np.testing.assert_array_equal(hist.counts, [1, 1])
    assert (hist.underflow, hist.overflow, hist.invalid) == (1, 1, 2)
    assert hist.total == 6
