#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
scenemodel

Procedural scenes, cameras and the scene-dependent statistics that drive blur strength.

This package provides:
    - SphericalCoord, CameraIntrinsics, CameraPose and look_at_pose: camera parameterization.
    - Scene and its primitives: procedural geometry loaded from schema-1 JSON.
    - SceneStats, compute_scene_stats, sample_viewpoint: geometry statistics and viewpoint sampling.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

from scenemodel.camera import (CameraIntrinsics, CameraPose, DegenerateLookAt, SphericalCoord, camera_rays,
                               cartesian_to_spherical, look_at_pose, spherical_to_cartesian)
from scenemodel.scenekeys import SceneKeys
from scenemodel.textures import CheckerTexture, NoiseTexture, SolidTexture
from scenemodel.scene import (Box, DirectionalLight, Plane, Scene, SceneFileError, Sphere, demo_scene, load_scene,
                              scene_from_dict)
from scenemodel.stats import (SceneNotVisible, SceneStats, ViewpointBox, compute_scene_stats, sample_viewpoint,
                              scene_stats_from_measurements)
