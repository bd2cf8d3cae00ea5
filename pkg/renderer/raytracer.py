#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
raytracer.py

Latent (sharp) image and ground-truth depth rendering by ray casting.

Every pixel casts one ray through its center, takes the nearest primitive hit and shades it
with albedo * (ambient + sum_l max(0, n . l) * intensity_l). Depth is the camera-frame z of the
hit, not the ray length. Rows are split into bands that may render on a thread pool; each pixel
is computed independently, so the output does not depend on the band layout.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from renderer.images import DepthMap, Image
from scenemodel.camera import CameraIntrinsics, CameraPose, camera_rays
from scenemodel.scene import Scene

logger = logging.getLogger(__name__)

DEFAULT_BACKGROUND = (0.5, 0.5, 0.5)


@dataclass(frozen=True, eq=False)
class Ray:
    """
    A ray o + t d with unit direction.
    """
    origin: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        direction = np.asarray(self.direction, dtype=np.float64)
        norm = np.linalg.norm(direction)
        if norm == 0.0:
            raise ValueError("Ray direction must be non-zero")
        if abs(norm - 1.0) > 1e-12:
            direction = direction / norm
        object.__setattr__(self, "origin", np.asarray(self.origin, dtype=np.float64))
        object.__setattr__(self, "direction", direction)

    def at(self, t) -> np.ndarray:
        return self.origin + np.multiply.outer(t, self.direction)


@dataclass(frozen=True, eq=False)
class RayGrid:
    """
    One ray per pixel sharing the camera center as origin.

    Attributes:
        origin (np.ndarray): Camera center in world coordinates.
        directions (np.ndarray): (H, W, 3) unit world directions.
        camera_directions (np.ndarray): (H, W, 3) the same directions in the camera frame.
    """
    origin: np.ndarray
    directions: np.ndarray
    camera_directions: np.ndarray

    def ray(self, u: int, v: int) -> Ray:
        return Ray(self.origin, self.directions[v, u])


def generate_rays(intr: CameraIntrinsics, pose: CameraPose) -> RayGrid:
    """
    Rays through the center (u + 0.5, v + 0.5) of every pixel under the pinhole model.
    """
    origin, world_dirs, cam_dirs = camera_rays(intr, pose)
    return RayGrid(origin, world_dirs, cam_dirs)


def _shade_band(scene: Scene, origin: np.ndarray, world_dirs: np.ndarray, cam_dirs: np.ndarray,
                background: np.ndarray) -> tuple:
    t, index = scene.nearest_hit(origin, world_dirs)
    color = np.broadcast_to(background, world_dirs.shape).copy()
    depth = np.full(world_dirs.shape[:-1], np.nan)
    ambient = np.array(scene.ambient)
    for primitive_index, primitive in enumerate(scene.primitives):
        mask = index == primitive_index
        if not np.any(mask):
            continue
        t_hit = t[mask]
        dirs = world_dirs[mask]
        points = origin + t_hit[:, None] * dirs
        normals = primitive.normals(points)
        # two-sided shading: flip normals that face away from the viewer
        facing = normals[:, 0] * dirs[:, 0] + normals[:, 1] * dirs[:, 1] + normals[:, 2] * dirs[:, 2]
        normals = np.where(facing[:, None] > 0, -normals, normals)
        irradiance = np.broadcast_to(ambient, points.shape).copy()
        for light in scene.lights:
            l = light.direction
            cosine = np.maximum(0.0, normals[:, 0] * l[0] + normals[:, 1] * l[1] + normals[:, 2] * l[2])
            irradiance = irradiance + cosine[:, None] * np.array(light.intensity)
        color[mask] = primitive.texture.albedo(points) * irradiance
        depth[mask] = t_hit * cam_dirs[mask][:, 2]
    return color, depth


def trace_image(scene: Scene, intr: CameraIntrinsics, pose: CameraPose, background=DEFAULT_BACKGROUND,
                threads: int = 1, band_rows: int = 32) -> tuple:
    """
    Render the latent image and z-depth of a scene.

    Args:
        scene (Scene): The scene to render.
        intr (CameraIntrinsics): Camera intrinsics.
        pose (CameraPose): World->camera pose.
        background: RGB radiance assigned to rays that miss every primitive.
        threads (int): Worker threads for row bands.
        band_rows (int): Rows per band.

    Returns:
        tuple: (Image, DepthMap); misses have background color and invalid depth.
    """
    rays = generate_rays(intr, pose)
    background = np.asarray(background, dtype=np.float64)
    bands = [(start, min(start + band_rows, intr.height)) for start in range(0, intr.height, band_rows)]

    def render(band):
        start, stop = band
        return _shade_band(scene, rays.origin, rays.directions[start:stop], rays.camera_directions[start:stop],
                           background)

    if threads > 1 and len(bands) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(render, bands))
    else:
        results = [render(band) for band in bands]
    color = np.concatenate([r[0] for r in results], axis=0)
    depth = np.concatenate([r[1] for r in results], axis=0)
    return Image(color), DepthMap(depth)
