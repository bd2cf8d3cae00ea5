#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Shared fixtures: small scenes, cameras and two-view setups.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import numpy as np
import pytest

from mvgeometry import ViewRecord
from renderer import trace_image
from scenemodel import (CameraIntrinsics, DirectionalLight, NoiseTexture, Plane, Scene, SolidTexture, Sphere,
                        look_at_pose)


@pytest.fixture
def sphere_scene():
    return Scene("unit-sphere", [Sphere((0.0, 0.0, 0.0), 1.0, SolidTexture((0.8, 0.7, 0.6)))],
                 [DirectionalLight((0.0, -1.0, 1.0))])


@pytest.fixture
def plane_scene():
    """A large smoothly textured ground plane at z = 0."""
    texture = NoiseTexture((0.2, 0.3, 0.5), (0.9, 0.8, 0.4), scale=1.0, seed=3)
    return Scene("ground", [Plane((0.0, 0.0, 0.0), (0.0, 0.0, 1.0), 4.0, texture)],
                 [DirectionalLight((0.3, -0.2, 1.0))])


@pytest.fixture
def small_intrinsics():
    return CameraIntrinsics.from_fov(64, 64, 50.0)


@pytest.fixture
def plane_views(plane_scene, small_intrinsics):
    """Two ray-traced views of the ground plane 0.3 units apart."""
    views = []
    for index, x in enumerate((0.0, 0.3)):
        pose = look_at_pose((x, -1.5, 4.0), (x, 0.0, 0.0))
        image, depth = trace_image(plane_scene, small_intrinsics, pose)
        views.append(ViewRecord(image, depth, small_intrinsics, pose, index))
    return views


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
