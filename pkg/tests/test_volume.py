#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the reference volume renderer against closed forms.
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

from renderer import (AnalyticRadianceField, NonFiniteField, Ray, constant_field, constant_field_reference,
                      convergence_table, field_from_dict, render_field_image, volume_render_ray)
from scenemodel import CameraIntrinsics, CameraPose

AXIS_RAY = Ray((0.0, 0.0, 0.0), (0.0, 0.0, 1.0))


def test_constant_field_oracle():
    sample = volume_render_ray(constant_field(1.0, (1.0, 1.0, 1.0), 1.0), AXIS_RAY, 100000)
    np.testing.assert_allclose(sample.color, 1.0 - math.exp(-1.0), atol=1e-4)
    assert sample.depth == pytest.approx(1.0 - 2.0 * math.exp(-1.0), abs=1e-4)
    assert sample.transmittance_final == pytest.approx(math.exp(-1.0), abs=1e-12)


def test_closed_form_reference():
    reference = constant_field_reference(1.0, (1.0, 0.5, 0.0), 1.0)
    np.testing.assert_allclose(reference.color, np.array([1.0, 0.5, 0.0]) * (1.0 - math.exp(-1.0)))
    assert reference.depth == pytest.approx(1.0 - 2.0 * math.exp(-1.0))
    empty = constant_field_reference(0.0, (1.0, 1.0, 1.0), 1.0)
    assert empty.transmittance_final == 1.0
    np.testing.assert_array_equal(empty.color, 0.0)


def test_zero_density_is_transparent():
    sample = volume_render_ray(constant_field(0.0), AXIS_RAY, 64)
    np.testing.assert_array_equal(sample.color, 0.0)
    assert sample.transmittance_final == 1.0


def test_first_order_convergence():
    field = constant_field(1.0, far_bound=1.0)
    reference = constant_field_reference(1.0, (1.0, 1.0, 1.0), 1.0)
    rows = convergence_table(field, AXIS_RAY, [100, 200, 400, 800], reference)
    assert [row.steps for row in rows] == [100, 200, 400, 800]
    assert math.isnan(rows[0].depth_error_ratio)
    for row in rows[1:]:
        assert 1.7 <= row.depth_error_ratio <= 2.3
    assert rows[-1].depth_error < rows[0].depth_error


def test_non_finite_field_raises():
    bad = AnalyticRadianceField(sigma=lambda points: np.full(points.shape[:-1], np.nan),
                                color=lambda points, dirs: np.ones(points.shape), far_bound=1.0, name="bad")
    with pytest.raises(NonFiniteField):
        volume_render_ray(bad, AXIS_RAY, 8)
    negative = AnalyticRadianceField(sigma=lambda points: np.full(points.shape[:-1], -1.0),
                                     color=lambda points, dirs: np.ones(points.shape), far_bound=1.0)
    with pytest.raises(NonFiniteField):
        volume_render_ray(negative, AXIS_RAY, 8)


def test_field_spec_parsing():
    field = field_from_dict({"type": "gaussian", "center": [0.0, 0.0, 0.5], "sigma": 40.0, "width": 0.1})
    sample = volume_render_ray(field, AXIS_RAY, 2000)
    assert sample.transmittance_final < 1e-3
    assert 0.25 < sample.depth < 0.5
    with pytest.raises(ValueError):
        field_from_dict({"type": "cloud"})
    with pytest.raises(ValueError):
        field_from_dict({"type": "constant"})


def test_render_field_image_center():
    intr = CameraIntrinsics.from_fov(5, 5, 30.0)
    image, depth, transmittance = render_field_image(constant_field(1.0), intr, CameraPose.identity(), 2000, threads=2)
    reference = constant_field_reference(1.0, (1.0, 1.0, 1.0), 1.0)
    np.testing.assert_allclose(image.data[2, 2], reference.color, atol=1e-3)
    assert depth.data[2, 2] == pytest.approx(reference.depth, abs=1e-3)
    assert transmittance.shape == (5, 5)
    # off-axis rays travel the same t range, so their z-depth is shorter
    assert depth.data[0, 0] < depth.data[2, 2]
