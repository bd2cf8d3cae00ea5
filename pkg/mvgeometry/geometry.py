#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
geometry.py

Pinhole projection, relative poses and depth-based pixel warping between views.

A pixel p = (u, v) in continuous coordinates of view i with z-depth D back-projects to
D * K_i^-1 (u, v, 1), moves into view k by the relative pose and reprojects through K_k.
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

from mvgeometry.sampling import bilinear_sample_grid
from renderer.images import DepthMap, Image
from scenemodel.camera import CameraIntrinsics, CameraPose

logger = logging.getLogger(__name__)


class InsufficientViews(ValueError):
    pass


class BehindCamera(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ViewRecord:
    """
    A posed source view.

    Attributes:
        image (Image): The view's image.
        depth (DepthMap): Its z-depth, or None when unknown.
        intrinsics (CameraIntrinsics): Camera intrinsics.
        pose (CameraPose): World->camera pose.
        index (int): Position of the view in its dataset.
    """
    image: Image
    depth: DepthMap
    intrinsics: CameraIntrinsics
    pose: CameraPose
    index: int = 0

    def __post_init__(self):
        size = (self.intrinsics.height, self.intrinsics.width)
        if (self.image.height, self.image.width) != size:
            raise ValueError(f"View {self.index}: image is {self.image.width}x{self.image.height}, "
                             f"intrinsics expect {size[1]}x{size[0]}")
        if self.depth is not None and (self.depth.height, self.depth.width) != size:
            raise ValueError(f"View {self.index}: depth is {self.depth.width}x{self.depth.height}, "
                             f"intrinsics expect {size[1]}x{size[0]}")


def relative_pose(pose_i: CameraPose, pose_k: CameraPose) -> CameraPose:
    """
    The transform from camera i to camera k: [R_k | t_k] [R_i | t_i]^-1.
    """
    rotation = pose_k.rotation @ pose_i.rotation.T
    return CameraPose(rotation, pose_k.translation - rotation @ pose_i.translation)


def project_points(points, intr: CameraIntrinsics, pose: CameraPose) -> tuple:
    """
    Project world points (..., 3).

    Returns:
        tuple: (u, v, z) arrays; u and v are only meaningful where z > 0.
    """
    cam = pose.transform(points)
    z = cam[..., 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        u = intr.fx * cam[..., 0] / z + intr.cx
        v = intr.fy * cam[..., 1] / z + intr.cy
    return u, v, z


def project(x, intr: CameraIntrinsics, pose: CameraPose) -> tuple:
    """
    Project a world point into an image.

    Returns:
        tuple: ((u, v), z) with z the camera-frame depth.

    Raises:
        BehindCamera: If the point has z <= 0 in the camera frame.
    """
    u, v, z = project_points(np.asarray(x, dtype=np.float64), intr, pose)
    if not z > 0:
        raise BehindCamera(f"Point {list(x)} is behind the camera (z={float(z)})")
    return (float(u), float(v)), float(z)


def backproject(u, v, depth, intr: CameraIntrinsics) -> np.ndarray:
    """Camera-frame points D * K^-1 (u, v, 1) for arrays of pixels and z-depths."""
    depth = np.asarray(depth, dtype=np.float64)
    x = (np.asarray(u, dtype=np.float64) - intr.cx) / intr.fx
    y = (np.asarray(v, dtype=np.float64) - intr.cy) / intr.fy
    return np.stack([x * depth, y * depth, depth], axis=-1)


def warp_pixels(u, v, depth, intr_i: CameraIntrinsics, intr_k: CameraIntrinsics, rel: CameraPose) -> tuple:
    """
    Vectorized warp of pixels of view i into view k.

    Returns:
        tuple: (u_k, v_k, z_k); pixels with z_k <= 0 are behind camera k.
    """
    points = rel.transform(backproject(u, v, depth, intr_i))
    z = points[..., 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        u_k = intr_k.fx * points[..., 0] / z + intr_k.cx
        v_k = intr_k.fy * points[..., 1] / z + intr_k.cy
    return u_k, v_k, z


def warp_pixel(p, depth: float, intr_i: CameraIntrinsics, intr_k: CameraIntrinsics, rel: CameraPose) -> tuple:
    """
    Warp one pixel of view i into view k at its z-depth.

    Args:
        p: (u, v) continuous pixel coordinates in view i.
        depth (float): z-depth of p in view i, > 0.
        intr_i (CameraIntrinsics): Source intrinsics.
        intr_k (CameraIntrinsics): Target intrinsics.
        rel (CameraPose): Relative pose from camera i to camera k.

    Returns:
        tuple: ((u_k, v_k), z_k).

    Raises:
        ValueError: If depth is not positive.
        BehindCamera: If the point lands behind camera k.
    """
    if not depth > 0:
        raise ValueError(f"Warp depth must be positive, got {depth}")
    u_k, v_k, z = warp_pixels(p[0], p[1], depth, intr_i, intr_k, rel)
    if not z > 0:
        raise BehindCamera(f"Pixel {tuple(p)} lands behind the target camera (z={float(z)})")
    return (float(u_k), float(v_k)), float(z)


def nearest_k(views: list, i: int, K: int) -> list:
    """
    Indices of the K views whose camera centers are closest to view i's, ties by lower index.

    Raises:
        InsufficientViews: If fewer than K other views exist.
    """
    if K < 0:
        raise ValueError(f"K must be non-negative, got {K}")
    if K > len(views) - 1:
        raise InsufficientViews(f"Requested {K} neighbours but only {len(views) - 1} other views exist")
    center = views[i].pose.center
    distances = [(float(np.linalg.norm(view.pose.center - center)), index)
                 for index, view in enumerate(views) if index != i]
    return [index for _, index in sorted(distances)[:K]]


@dataclass(frozen=True)
class ReprojectionReport:
    """
    Forward-backward reprojection errors of view i through view k.

    Attributes:
        errors (np.ndarray): (H, W) pixel errors, NaN where not mutually visible.
        valid_count (int): Mutually visible pixels.
        mean_error (float): Mean error over them, NaN when there are none.
        fraction_within (float): Fraction of them with error <= threshold.
        threshold (float): Pixel threshold used for `fraction_within`.
    """
    errors: np.ndarray
    valid_count: int
    mean_error: float
    fraction_within: float
    threshold: float


def reprojection_error(view_i: ViewRecord, view_k: ViewRecord, threshold: float = 0.5) -> ReprojectionReport:
    """
    Warp every valid pixel of view i into view k with D_i, sample D_k there, warp back with it and
    measure the distance to the starting pixel.
    """
    if view_i.depth is None or view_k.depth is None:
        raise ValueError("Reprojection error needs depth in both views")
    intr_i, intr_k = view_i.intrinsics, view_k.intrinsics
    u, v = np.meshgrid(np.arange(intr_i.width) + 0.5, np.arange(intr_i.height) + 0.5)
    valid = view_i.depth.valid
    depth_i = view_i.depth.filled(1.0)
    rel = relative_pose(view_i.pose, view_k.pose)
    u_k, v_k, z_k = warp_pixels(u, v, depth_i, intr_i, intr_k, rel)
    valid &= z_k > 0
    depth_k, in_bounds = bilinear_sample_grid(view_k.depth.data, np.where(valid, u_k, -1.0), np.where(valid, v_k, -1.0))
    valid &= in_bounds & np.isfinite(depth_k) & (depth_k > 0)
    back = relative_pose(view_k.pose, view_i.pose)
    u_b, v_b, z_b = warp_pixels(u_k, v_k, np.where(valid, depth_k, 1.0), intr_k, intr_i, back)
    valid &= z_b > 0
    errors = np.where(valid, np.hypot(u_b - u, v_b - v), np.nan)
    count = int(np.count_nonzero(valid))
    if count == 0:
        return ReprojectionReport(errors, 0, float("nan"), float("nan"), threshold)
    within = float(np.count_nonzero(errors[valid] <= threshold)) / count
    mean = float(np.mean(errors[valid]))
    logger.debug("Reprojection %d->%d: %d pixels, mean %.4f px", view_i.index, view_k.index, count, mean)
    return ReprojectionReport(errors, count, mean, within, threshold)
