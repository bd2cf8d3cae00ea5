#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
stats.py

Scene-dependent geometric statistics and camera viewpoint sampling.

The scene-dependent blur weight combines three ratios measured from a viewpoint:
    flatness     F = (far - near) / max(d)
    depth range  R = far / near
    orientation  O = max(d) / min(d)
and w_u = (F * R * O) ** (1/3). Every factor is a ratio of lengths, so w_u does not change when
the scene and the camera are scaled together.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import logging
from dataclasses import dataclass

import numpy as np

from scenemodel.camera import CameraIntrinsics, CameraPose, SphericalCoord, camera_rays
from scenemodel.scene import Scene

logger = logging.getLogger(__name__)


class SceneNotVisible(ValueError):
    """Raised when no camera ray hits the scene."""


class ViewpointBox:
    """
    Camera placement box for sampled viewpoints.

    Attributes:
        PHI0 (float): Center polar angle, degrees.
        PHI1 (float): Polar half range, degrees.
        THETA0_CHOICES (tuple): Azimuth quadrant centers, degrees.
        THETA1 (float): Azimuth half range, degrees.
        RADIUS_SCALE (tuple): Default range for rho in r = rho * bounding sphere radius.
    """
    PHI0 = 60.0
    PHI1 = 7.5
    THETA0_CHOICES = (0.0, 90.0, 180.0, 270.0)
    THETA1 = 7.5
    RADIUS_SCALE = (2.5, 3.5)


@dataclass(frozen=True)
class SceneStats:
    """
    Geometric attributes of a scene seen from one camera position.

    Attributes:
        near (float): Smallest visible z-depth, scene units.
        far (float): Largest visible z-depth, scene units.
        bbox_dims (tuple): Bounding box extents (dx, dy, dz).
        flatness (float): F_u.
        depth_range (float): R_u.
        orientation (float): O_u.
        blur_weight_base (float): w_u.
    """
    near: float
    far: float
    bbox_dims: tuple
    flatness: float
    depth_range: float
    orientation: float
    blur_weight_base: float

    @property
    def scene_dimension(self) -> float:
        """Geometric mean of the three bounding box extents."""
        return float(np.prod(self.bbox_dims) ** (1.0 / 3.0))

    @property
    def scene_range(self) -> float:
        """far - near, the normalizer for relative depth differences."""
        return self.far - self.near

    def to_dict(self) -> dict:
        return {"near": self.near, "far": self.far, "bbox_dims": list(self.bbox_dims),
                "flatness": self.flatness, "depth_range": self.depth_range,
                "orientation": self.orientation, "blur_weight_base": self.blur_weight_base}

    @staticmethod
    def from_dict(data: dict) -> "SceneStats":
        return SceneStats(near=float(data["near"]), far=float(data["far"]),
                          bbox_dims=tuple(float(v) for v in data["bbox_dims"]),
                          flatness=float(data["flatness"]), depth_range=float(data["depth_range"]),
                          orientation=float(data["orientation"]),
                          blur_weight_base=float(data["blur_weight_base"]))


def scene_stats_from_measurements(near: float, far: float, bbox_dims) -> SceneStats:
    """
    Compose the blur-weight factors from measured near/far depths and bounding box extents.

    Args:
        near (float): Nearest visible depth, > 0.
        far (float): Farthest visible depth, >= near.
        bbox_dims: Three positive extents.

    Returns:
        SceneStats: The composed statistics.

    Raises:
        ValueError: If the measurements violate 0 < near <= far or an extent is not positive.
    """
    dims = tuple(float(v) for v in bbox_dims)
    if len(dims) != 3 or min(dims) <= 0:
        raise ValueError(f"Bounding box extents must be three positive numbers, got {bbox_dims}")
    if not 0 < near <= far:
        raise ValueError(f"Expected 0 < near <= far, got near={near}, far={far}")
    flatness = (far - near) / max(dims)
    depth_range = far / near
    orientation = max(dims) / min(dims)
    weight = (flatness * depth_range * orientation) ** (1.0 / 3.0)
    return SceneStats(near=float(near), far=float(far), bbox_dims=dims, flatness=flatness,
                      depth_range=depth_range, orientation=orientation, blur_weight_base=weight)


def compute_scene_stats(scene: Scene, pose: CameraPose, intr: CameraIntrinsics) -> SceneStats:
    """
    Measure near/far by casting one ray per pixel of `intr` from `pose`.

    Raises:
        SceneNotVisible: If no ray hits a primitive.
    """
    origin, world_dirs, cam_dirs = camera_rays(intr, pose)
    t, index = scene.nearest_hit(origin, world_dirs)
    hit = index >= 0
    if not np.any(hit):
        raise SceneNotVisible(f"Scene '{scene.id}' is not visible from camera at {pose.center.tolist()}")
    depth = t[hit] * cam_dirs[..., 2][hit]
    stats = scene_stats_from_measurements(float(depth.min()), float(depth.max()), scene.bbox_dims)
    logger.debug("Scene '%s' stats: near=%.4f far=%.4f w_u=%.4f", scene.id, stats.near, stats.far,
                 stats.blur_weight_base)
    return stats


def sample_viewpoint(rng: np.random.Generator, radius_scale_range: tuple, bounding_radius: float,
                     theta0: float = None) -> SphericalCoord:
    """
    Sample a camera position inside the viewpoint box.

    Args:
        rng (np.random.Generator): Seeded generator.
        radius_scale_range (tuple): (lo, hi) range of rho.
        bounding_radius (float): Scene bounding sphere radius.
        theta0 (float, optional): Quadrant center; drawn from THETA0_CHOICES when None.

    Returns:
        SphericalCoord: The sampled position, theta wrapped into [0, 360).
    """
    lo, hi = radius_scale_range
    if not 0 < lo <= hi:
        raise ValueError(f"Radius scale range must satisfy 0 < lo <= hi, got ({lo}, {hi})")
    if theta0 is None:
        theta0 = ViewpointBox.THETA0_CHOICES[int(rng.integers(len(ViewpointBox.THETA0_CHOICES)))]
    phi = rng.uniform(ViewpointBox.PHI0 - ViewpointBox.PHI1, ViewpointBox.PHI0 + ViewpointBox.PHI1)
    theta = rng.uniform(theta0 - ViewpointBox.THETA1, theta0 + ViewpointBox.THETA1)
    rho = lo if lo == hi else rng.uniform(lo, hi)
    return SphericalCoord(r=rho * bounding_radius, phi=float(phi), theta=float(theta) % 360.0)
