#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the latent-image ray tracer.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import numpy as np
import pytest

from renderer import DEFAULT_BACKGROUND, DepthMap, Image, Ray, generate_rays, trace_image
from scenemodel import CameraIntrinsics, DirectionalLight, Scene, demo_scene, look_at_pose


def test_sphere_center_depth(sphere_scene):
    intr = CameraIntrinsics.from_fov(5, 5, 40.0)
    pose = look_at_pose((0.0, -5.0, 0.0), (0.0, 0.0, 0.0))
    image, depth = trace_image(sphere_scene, intr, pose)
    assert depth.data[2, 2] == pytest.approx(4.0, abs=1e-9)
    assert np.all(image.data[2, 2] >= 0)
    assert image.data.shape == (5, 5, 3)


def test_empty_scene_is_background():
    scene = Scene("empty", [], [DirectionalLight((0.0, 0.0, 1.0))])
    intr = CameraIntrinsics.from_fov(8, 6, 50.0)
    image, depth = trace_image(scene, intr, look_at_pose((0.0, -3.0, 0.0), (0.0, 0.0, 0.0)))
    np.testing.assert_array_equal(image.data, np.broadcast_to(DEFAULT_BACKGROUND, (6, 8, 3)))
    assert not depth.valid.any()


def test_misses_have_invalid_depth(sphere_scene):
    intr = CameraIntrinsics.from_fov(32, 32, 60.0)
    _, depth = trace_image(sphere_scene, intr, look_at_pose((0.0, -4.0, 0.0), (0.0, 0.0, 0.0)))
    assert depth.valid[16, 16]
    assert not depth.valid[0, 0]
    assert np.isnan(depth.data[0, 0])


def test_trace_is_thread_independent():
    scene = demo_scene()
    intr = CameraIntrinsics.from_fov(40, 24, 50.0)
    pose = look_at_pose((3.0, -2.0, 2.0), (0.0, 0.0, 0.0))
    single = trace_image(scene, intr, pose, threads=1, band_rows=4)
    multi = trace_image(scene, intr, pose, threads=6, band_rows=4)
    np.testing.assert_array_equal(single[0].data, multi[0].data)
    np.testing.assert_array_equal(single[1].data, multi[1].data)


def test_generate_rays_are_unit():
    intr = CameraIntrinsics.from_fov(6, 4, 70.0)
    rays = generate_rays(intr, look_at_pose((1.0, 2.0, 3.0), (0.0, 0.0, 0.0)))
    np.testing.assert_allclose(np.linalg.norm(rays.directions, axis=-1), 1.0, atol=1e-12)
    ray = rays.ray(3, 1)
    np.testing.assert_allclose(ray.direction, rays.directions[1, 3])


def test_ray_normalizes_direction():
    ray = Ray((0.0, 0.0, 0.0), (0.0, 0.0, 2.0))
    np.testing.assert_allclose(ray.at(1.5), [0.0, 0.0, 1.5])
    with pytest.raises(ValueError):
        Ray((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))


def test_image_and_depth_containers():
    with pytest.raises(ValueError):
        Image(np.full((2, 2, 3), -0.1))
    with pytest.raises(ValueError):
        Image(np.full((2, 2, 3), np.nan))
    depth = DepthMap(np.array([[1.0, 0.0], [np.inf, -2.0]]))
    np.testing.assert_array_equal(depth.valid, [[True, False], [False, False]])
    np.testing.assert_array_equal(depth.filled(7.0), [[1.0, 7.0], [7.0, 7.0]])
